#pragma once

#include <optional>
#include <string>
#include <vector>

#include "sdea/grid.hpp"
#include "sdea/model.hpp"

namespace sdea {

struct CheckOptions {
  /// Relative tolerance for the imaginary-pole boundary (Routh margin = 0).
  double boundary_rel_tol = 1e-9;
  /// Frequency grid for sampled cross-checks and absolute stability.
  double omega_min = 1e-3;
  double omega_max = 1e6;
  int points = 4000;
  /// Sampled margins pass when value >= -grid_rel_tol * scale.
  double grid_rel_tol = 1e-8;
  Exec exec = Exec::kParallel;

  std::vector<double> grid() const { return log_grid(omega_min, omega_max, points); }
};

struct ConditionA {
  bool pass = false;
  /// a1(a2 a3 - a1 a4) - a0 a3^2 and its magnitude scale; zero when the
  /// reduced-order route was taken.
  double margin = 0.0;
  double scale = 0.0;
  /// false when Im or If vanish and the root census decided.
  bool closed_form = true;
};

struct ConditionB {
  bool pass = false;
  /// No imaginary-axis pole of h11: passes vacuously.
  bool vacuous = true;
  std::optional<double> pole;
  double beta = 0.0;
  bool equality_holds = false;
};

enum class CiFailure { kNone, kConstantTerm, kCubic };
enum class CiiFailure { kNone, kB22Zero, kB22Above4Bf, kT0Bound, kCubic };

const char* to_string(CiFailure f);
const char* to_string(CiiFailure f);

struct ConditionCi {
  bool pass = false;
  /// Which alternative held: kA is (i1), kB is (i2).
  CubicBranch branch = CubicBranch::kNone;
  CiFailure failure = CiFailure::kNone;
  std::optional<double> witness_omega;
};

struct ConditionCii {
  bool pass = false;
  /// kA is (ii1), kB is (ii2).
  CubicBranch branch = CubicBranch::kNone;
  CiiFailure failure = CiiFailure::kNone;
  std::optional<double> witness_omega;
};

struct Witness {
  std::string condition;
  double value;
};

struct PassivityReport {
  ConditionA a;
  ConditionB b;
  ConditionCi ci;
  ConditionCii cii;
  bool overall = false;
  /// Im = If = 0: decided by the Sturm route only.
  bool outside_closed_forms = false;
  std::vector<Witness> witnesses;
  /// Sampled Re h11 Re h22 - |(conj h12 + h21)/2|^2 over the grid.
  double grid_min_relative = 0.0;
  double grid_argmin = 0.0;
  bool grid_pass = false;
};

ConditionA check_condition_a(const SystemParams& p, const CheckOptions& opt = {});
ConditionB check_condition_b(const SystemParams& p, const CheckOptions& opt = {});
ConditionCi check_condition_c_i(const SystemParams& p);
ConditionCii check_condition_c_ii(const SystemParams& p, const VirtualCoupler& vc);

/// Verdict of (c-ii) from the closed-form cubic alone; the cheap predicate
/// driving bisections.
bool condition_c_ii_closed_form(const SystemParams& p, const VirtualCoupler& vc);

PassivityReport check_two_port_passivity(const SystemParams& p, const VirtualCoupler& vc,
                                         const CheckOptions& opt = {});

/// Largest k22 meeting (c-ii) at this b22, to within `tol`. Zero when no
/// positive k22 is feasible (b22 outside (0, 4Bf], Im = 0 with If > 0).
double k22_upper_bound(const SystemParams& p, double b22, double tol = 1e-3);

/// Conditions (a), (b) plus non-negativity of every r_i and t_i.
struct SufficientReport {
  bool pass = false;
  bool r_nonneg = false;
  bool t_nonneg = false;
  bool a_and_b = false;
};
SufficientReport check_sufficient_conditions(const SystemParams& p, const VirtualCoupler& vc,
                                             const CheckOptions& opt = {});

struct AbsoluteStabilityReport {
  ConditionA a;
  ConditionB b;
  ConditionCi ci;
  bool cii_pass = false;
  bool overall = false;
  /// min over the grid of (2 Re h11 Re h22 - Re h12h21 - |h12h21|) / |h12h21|
  double min_margin = 0.0;
  double argmin_omega = 0.0;
};

AbsoluteStabilityReport check_absolute_stability(const SystemParams& p, const VirtualCoupler& vc,
                                                 const CheckOptions& opt = {});

}  // namespace sdea
