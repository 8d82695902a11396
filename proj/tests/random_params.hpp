#pragma once

#include <cmath>
#include <random>

#include "sdea/model.hpp"

namespace sdea::testing {

/// Log-uniform perturbation of the nominal plant by up to `spread` decades per
/// parameter, alpha uniform on [0, 1].
inline SystemParams random_params(std::mt19937_64& rng, double spread = 0.5) {
  std::uniform_real_distribution<double> u(-spread, spread);
  std::uniform_real_distribution<double> a(0.0, 1.0);
  auto jitter = [&](double v) { return v * std::pow(10.0, u(rng)); };
  const auto t = SystemParams::table1();
  return {jitter(t.Kf), jitter(t.Bf), jitter(t.M), jitter(t.B), jitter(t.Pm),
          jitter(t.Im), jitter(t.Pf), jitter(t.If), a(rng)};
}

inline VirtualCoupler random_coupler(std::mt19937_64& rng, const SystemParams& p) {
  std::uniform_real_distribution<double> kb(0.0, 1.3);
  std::uniform_real_distribution<double> kk(0.0, 1.5);
  return {kk(rng) * p.Kf, kb(rng) * 4.0 * p.Bf};
}

}  // namespace sdea::testing
