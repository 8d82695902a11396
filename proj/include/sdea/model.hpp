#pragma once

#include <complex>
#include <optional>
#include <string>

#include "sdea/stability.hpp"

namespace sdea {

/// Plant and VSIC controller parameters in rotational SI units.
struct SystemParams {
  double Kf = 0.0;  // SDEA stiffness, N m/rad
  double Bf = 0.0;  // SDEA damping, N m s/rad
  double M = 0.0;   // actuator inertia, kg m^2 (config key "J")
  double B = 0.0;   // actuator damping, N m s/rad
  double Pm = 0.0;  // motion P gain
  double Im = 0.0;  // motion I gain
  double Pf = 0.0;  // force P gain
  double If = 0.0;  // force I gain
  double alpha = 1.0;

  /// Throws InvalidParams unless Kf, M, B, Pm, Pf > 0, Bf, Im, If >= 0 and
  /// 0 <= alpha <= 1.
  void validate() const;

  static SystemParams table1();
};

struct VirtualCoupler {
  double k22 = 0.0;  // N m/rad
  double b22 = 0.0;  // N m s/rad

  void validate() const;
};

template <class T>
struct DerivedCoefficients {
  // common denominator a4 s^4 + ... + a0
  T a4, a3, a2, a1, a0;
  // h11 numerator s (b3 s^3 + b2 s^2 + b1 s + b0)
  T b3, b2, b1, b0;
  // h12 numerator n3 s^3 + ... + n0
  T n3, n2, n1, n0;
  // den - h12 numerator = s^2 (e4 s^2 + e3 s + e2)
  T e4, e3, e2;
  T mu, nu;
  T kappa1, kappa2, kappa3;
  T tau1, tau2;
  // Re h11 numerator: x (r3 x^3 + r2 x^2 + r1 x + r0), x = w^2
  T r3, r2, r1, r0;
  // passivity cubic of the coupled port: t3 x^3 + t2 x^2 + t1 x + t0
  T t3, t2, t1, t0;
};

template <class T>
DerivedCoefficients<T> derive(const SystemParams& p, const VirtualCoupler& vc);

extern template DerivedCoefficients<double> derive(const SystemParams&, const VirtualCoupler&);
extern template DerivedCoefficients<Rational> derive(const SystemParams&, const VirtualCoupler&);

inline DerivedCoefficients<double> derive_coefficients(const SystemParams& p,
                                                       const VirtualCoupler& vc) {
  return derive<double>(p, vc);
}

template <class T>
struct BasicHybridMatrix {
  BasicRationalFunction<T> h11, h12, h21, h22;
};

using HybridMatrix = BasicHybridMatrix<double>;
using ExactHybridMatrix = BasicHybridMatrix<Rational>;

/// Two-port of the coupled SDEA. h11 and h12 share the quartic
/// denominator, with common factors of s removed when integral gains vanish.
/// Throws InvalidParams for invalid inputs or a coupler with k22 = b22 = 0.
ExactHybridMatrix hybrid_matrix_exact(const SystemParams& p, const VirtualCoupler& vc);
HybridMatrix hybrid_matrix(const SystemParams& p, const VirtualCoupler& vc);

struct HValues {
  std::complex<double> h11, h12, h21, h22;
};

/// Entries at s = jw. Throws PoleAtFrequency when a denominator vanishes.
HValues eval_h(const HybridMatrix& h, double omega);

struct Config {
  SystemParams params;
  std::optional<VirtualCoupler> vc;
};

/// Strict JSON: keys Kf, Bf, J, B, Pm, Im, Pf, If (required), alpha
/// (default 1), k22 and b22 (both or neither). Throws Error(kConfig).
Config parse_config(const std::string& json_text);
Config load_config(const std::string& path);

}  // namespace sdea
