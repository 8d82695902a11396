#pragma once

#include <vector>

#include "sdea/model.hpp"

namespace sdea {

/// Frequency-grid kernels. Each point is independent, so the parallel
/// variants produce bit-identical output to the serial reference.
enum class Exec { kSerial, kParallel };

struct GridMargin {
  std::vector<double> value;
  std::vector<double> scale;
  /// min over the grid of value / scale (value alone where scale is 0)
  double min_relative = 0.0;
  double argmin = 0.0;
};

/// Re h11 Re h22 - |(conj(h12) + h21) / 2|^2, scaled by
/// |h11||h22| + |(conj(h12) + h21) / 2|^2.
GridMargin determinant_margin(const HybridMatrix& h, const std::vector<double>& omega,
                              Exec exec = Exec::kParallel);

/// 2 Re h11 Re h22 - Re(h12 h21) - |h12 h21|, scaled by |h12 h21|.
GridMargin llewellyn_margin(const HybridMatrix& h, const std::vector<double>& omega,
                            Exec exec = Exec::kParallel);

/// Re Z(jw), scaled by |Z(jw)|.
GridMargin real_part_margin(const RationalFunction& z, const std::vector<double>& omega,
                            Exec exec = Exec::kParallel);

struct BodePoint {
  double omega;
  double magnitude_db;
  double phase_deg;
};

/// Magnitude (|Z| = 0 clamped to -400 dB) and phase unwrapped along the grid.
std::vector<BodePoint> bode(const RationalFunction& z, const std::vector<double>& omega,
                            Exec exec = Exec::kParallel);

}  // namespace sdea
