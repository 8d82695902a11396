#pragma once

#include <optional>
#include <vector>

#include "sdea/passivity.hpp"

namespace sdea {

enum class Criterion { kPassivity, kAbsolute };

const char* to_string(Criterion c);

struct TracePoint {
  double b22;
  double alpha;
  double k22;
};

struct OptimizationResult {
  double b22_opt = 0.0;
  std::optional<double> alpha_opt;
  double k22_max = 0.0;
  Criterion criterion = Criterion::kPassivity;
  /// false when no b22 in (0, 4Bf] admits a positive k22 (Bf = 0 among others)
  bool feasible = false;
  /// The 50-point sweep maximum lies within one sweep step of b22_opt.
  bool unimodal = true;
  std::vector<TracePoint> trace;
};

struct OptimizeOptions {
  CheckOptions check;
  /// Final golden-section bracket width on b22 [N m s/rad].
  double b22_tol = 1e-4;
  /// Bisection width on k22 [N m/rad].
  double k22_tol = 1e-3;
  double alpha_tol = 1e-3;
  int guard_points = 50;
};

/// Largest k22 meeting the chosen criterion at this b22, by bisection.
/// For kPassivity this is k22_upper_bound.
double k22_limit(const SystemParams& p, double b22, Criterion c, const OptimizeOptions& opt = {});

/// Throws BaselineNotPassive when Conditions (a), (b) or (c-i) fail.
OptimizationResult maximize_k22(const SystemParams& p, Criterion c, const OptimizeOptions& opt = {});

/// Golden-section on alpha in [0, 1] plus both endpoints, or the best of
/// `alphas` when given. Throws BaselineNotPassive when no alpha qualifies.
OptimizationResult maximize_k22_over_alpha(const SystemParams& p, Criterion c,
                                           const OptimizeOptions& opt = {},
                                           const std::vector<double>& alphas = {});

}  // namespace sdea
