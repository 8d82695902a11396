#include "sdea/optimize.hpp"

#include <cmath>
#include <functional>

namespace sdea {

namespace {

const double kInvPhi = (std::sqrt(5.0) - 1.0) / 2.0;

struct Golden {
  double x;
  double f;
};

// Maximize f on [a, b] until the bracket is narrower than tol.
Golden golden_max(const std::function<double(double)>& f, double a, double b, double tol) {
  double c = b - kInvPhi * (b - a), d = a + kInvPhi * (b - a);
  double fc = f(c), fd = f(d);
  while (b - a > tol) {
    if (fc >= fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - kInvPhi * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + kInvPhi * (b - a);
      fd = f(d);
    }
  }
  return fc >= fd ? Golden{c, fc} : Golden{d, fd};
}

void require_baseline(const SystemParams& p, const CheckOptions& opt) {
  const auto a = check_condition_a(p, opt);
  const auto b = check_condition_b(p, opt);
  const auto ci = check_condition_c_i(p);
  if (!a.pass || !b.pass || !ci.pass)
    throw Error(ErrorCode::kBaselineNotPassive,
                std::string("conditions") + (a.pass ? "" : " (a)") + (b.pass ? "" : " (b)") +
                    (ci.pass ? "" : " (c-i)") + " fail; no coupler can help");
}

bool llewellyn_ok(const SystemParams& p, const VirtualCoupler& vc, const CheckOptions& opt,
                  const std::vector<double>& grid) {
  try {
    return llewellyn_margin(hybrid_matrix(p, vc), grid, opt.exec).min_relative >= -opt.grid_rel_tol;
  } catch (const Error& e) {
    if (e.code() != ErrorCode::kPoleAtFrequency) throw;
    return false;
  }
}

double absolute_limit(const SystemParams& p, double b22, const OptimizeOptions& opt) {
  if (!(b22 > 0.0)) return 0.0;
  const auto grid = opt.check.grid();
  auto ok = [&](double k) { return llewellyn_ok(p, {k, b22}, opt.check, grid); };
  // passivity implies absolute stability, so its bound seeds the bracket
  double lo = k22_upper_bound(p, b22, opt.k22_tol);
  if (!ok(lo)) lo = 0.0;
  if (!ok(lo)) return 0.0;
  double step = std::max(lo, p.Kf) * 0.125;
  double hi = lo + step;
  while (ok(hi)) {
    lo = hi;
    step *= 2.0;
    hi = lo + step;
    if (hi > 1e6 * p.Kf) return lo;
  }
  while (hi - lo > opt.k22_tol) {
    const double mid = 0.5 * (lo + hi);
    (ok(mid) ? lo : hi) = mid;
  }
  return lo;
}

}  // namespace

const char* to_string(Criterion c) {
  return c == Criterion::kPassivity ? "passivity" : "absolute";
}

double k22_limit(const SystemParams& p, double b22, Criterion c, const OptimizeOptions& opt) {
  return c == Criterion::kPassivity ? k22_upper_bound(p, b22, opt.k22_tol)
                                    : absolute_limit(p, b22, opt);
}

OptimizationResult maximize_k22(const SystemParams& p, Criterion c, const OptimizeOptions& opt) {
  p.validate();
  require_baseline(p, opt.check);
  OptimizationResult r;
  r.criterion = c;
  const double top = 4.0 * p.Bf;
  if (!(top > 0.0)) return r;

  auto objective = [&](double b22) {
    const double k = k22_limit(p, b22, c, opt);
    r.trace.push_back({b22, p.alpha, k});
    return k;
  };

  const int n = std::max(opt.guard_points, 2);
  const double h = top / n;
  std::vector<double> sweep(static_cast<std::size_t>(n));
#pragma omp parallel for schedule(dynamic)
  for (int i = 1; i <= n; ++i) sweep[static_cast<std::size_t>(i - 1)] = k22_limit(p, h * i, c, opt);
  int best = 0;
  for (int i = 0; i < n; ++i) {
    r.trace.push_back({h * (i + 1), p.alpha, sweep[static_cast<std::size_t>(i)]});
    if (sweep[static_cast<std::size_t>(i)] > sweep[static_cast<std::size_t>(best)]) best = i;
  }

  auto g = golden_max(objective, 0.0, top, opt.b22_tol);
  const double sweep_b22 = h * (best + 1);
  r.unimodal = std::abs(g.x - sweep_b22) <= h + opt.b22_tol;
  if (!r.unimodal || sweep[static_cast<std::size_t>(best)] > g.f) {
    // refine around the sweep maximum instead of trusting the global bracket
    const auto local =
        golden_max(objective, std::max(0.0, sweep_b22 - h), std::min(top, sweep_b22 + h), opt.b22_tol);
    if (local.f > g.f) g = local;
  }
  if (top - g.x <= opt.b22_tol) {
    const double f_top = objective(top);
    if (f_top >= g.f) g = {top, f_top};
  }
  r.b22_opt = g.x;
  r.k22_max = g.f;
  r.feasible = g.f > 0.0;
  return r;
}

OptimizationResult maximize_k22_over_alpha(const SystemParams& p, Criterion c,
                                           const OptimizeOptions& opt,
                                           const std::vector<double>& alphas) {
  std::optional<OptimizationResult> best;
  std::vector<TracePoint> trace;
  bool any_baseline = false;
  auto evaluate = [&](double alpha) {
    auto q = p;
    q.alpha = alpha;
    try {
      auto r = maximize_k22(q, c, opt);
      any_baseline = true;
      r.alpha_opt = alpha;
      trace.insert(trace.end(), r.trace.begin(), r.trace.end());
      const double k = r.k22_max;
      if (!best || k > best->k22_max) best = std::move(r);
      return k;
    } catch (const Error& e) {
      if (e.code() != ErrorCode::kBaselineNotPassive) throw;
      return -1.0;
    }
  };
  if (!alphas.empty()) {
    for (double a : alphas) evaluate(a);
  } else {
    evaluate(0.0);
    evaluate(1.0);
    golden_max(evaluate, 0.0, 1.0, opt.alpha_tol);
  }
  if (!any_baseline)
    throw Error(ErrorCode::kBaselineNotPassive, "conditions (a)-(c-i) fail for every alpha");
  best->trace = std::move(trace);
  return *best;
}

}  // namespace sdea
