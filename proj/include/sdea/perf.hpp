#pragma once

#include <array>
#include <vector>

#include "sdea/grid.hpp"
#include "sdea/model.hpp"

namespace sdea {

struct EnvironmentModel {
  enum class Kind { kNull, kSpring, kDamper, kVoigt };
  Kind kind = Kind::kNull;
  double Ke = 0.0;
  double Be = 0.0;

  static EnvironmentModel null() { return {}; }
  static EnvironmentModel spring(double Ke) { return {Kind::kSpring, Ke, 0.0}; }
  static EnvironmentModel damper(double Be) { return {Kind::kDamper, 0.0, Be}; }
  static EnvironmentModel voigt(double Ke, double Be) { return {Kind::kVoigt, Ke, Be}; }

  /// Ze(s) = Ke/s + Be. Throws InvalidParams for negative or non-finite values.
  ExactRationalFunction impedance() const;
};

/// (h11 + dh Ze) / (1 + h22 Ze) with dh = h11 h22 - h12 h21, composed on
/// coefficients. Throws DegenerateTermination if 1 + h22 Ze vanishes.
ExactRationalFunction transmitted_impedance(const ExactHybridMatrix& h, const EnvironmentModel& env);

ExactRationalFunction z_min(const ExactHybridMatrix& h);
/// -h12 h21 / h22
ExactRationalFunction z_width(const ExactHybridMatrix& h);

using Matrix2 = std::array<std::array<double, 2>, 2>;

struct TransparencyLimits {
  double omega_low = 1e-4;
  double omega_high = 1e7;
  /// Real parts of the entries at the grid edges.
  Matrix2 low_freq{};
  Matrix2 high_freq{};
  /// Largest |h_ij(jw) - L_ij| / max(1, |L_ij|) against each pattern.
  double low_error = 0.0;
  double high_error = 0.0;
  bool low_converged = false;
  bool high_converged = false;
};

/// Low pattern [[0, 1], [-1, 0]], high pattern [[Bf, 0], [-1, 1/b22]].
TransparencyLimits transparency_limits(const SystemParams& p, const VirtualCoupler& vc,
                                       double omega_low = 1e-4, double omega_high = 1e7,
                                       double tol = 1e-3);

/// k22 Kd / (k22 - Kd). Throws DesiredExceedsCoupler if Kd >= k22.
double spring_reference(double k22, double Kd);
/// b22 Bd / (b22 - Bd). Throws DesiredExceedsCoupler if Bd >= b22.
double voigt_reference(double b22, double Bd);

std::vector<BodePoint> frequency_response(const RationalFunction& z, const std::vector<double>& omega,
                                          Exec exec = Exec::kParallel);

}  // namespace sdea
