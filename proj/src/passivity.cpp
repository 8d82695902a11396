#include "sdea/passivity.hpp"

#include <cmath>
#include <stdexcept>

namespace sdea {

namespace {

const VirtualCoupler kNoCoupler{0.0, 0.0};

void agree(bool x, bool y, const char* what) {
  if (x != y) throw std::logic_error(std::string("route disagreement in ") + what);
}

bool integral_gains_positive(const SystemParams& p) { return p.Im > 0.0 && p.If > 0.0; }
bool integral_gains_zero(const SystemParams& p) { return p.Im == 0.0 && p.If == 0.0; }

// p + M sqrt(3 k) >= 0, with p, k and M > 0 exact
bool plus_root_nonneg(const Rational& p, const Rational& three_m2_k) {
  return sign(p) >= 0 || (sign(three_m2_k) >= 0 && p * p <= three_m2_k);
}

// (i1)/(i2) on r3..r0.
CubicBranch explicit_c_i(const DerivedCoefficients<Rational>& d, const SystemParams& p) {
  const Rational Bf = exact(p.Bf), M = exact(p.M), Kf = exact(p.Kf), Im = exact(p.Im);
  const Rational three = 3 * Bf * M * M * d.r1;
  if (sign(d.r1) >= 0 && plus_root_nonneg(d.r2, three)) return CubicBranch::kA;
  const Rational rho1 = d.r2 * d.r2 - three;
  const Rational rho2 = d.r1 * d.r2 - 9 * Bf * Im * M * M * Kf * Kf * d.kappa1;
  if (sign(rho1) > 0 && sign(rho2) < 0 &&
      4 * rho2 * d.r2 * rho1 < 4 * d.r1 * rho1 * rho1 + 3 * Bf * M * M * rho2 * rho2)
    return CubicBranch::kB;
  return CubicBranch::kNone;
}

// (ii1)/(ii2) on t3..t0.
CubicBranch explicit_c_ii(const DerivedCoefficients<Rational>& d, const SystemParams& p,
                          const VirtualCoupler& vc) {
  const Rational M = exact(p.M), b22 = exact(vc.b22);
  const Rational three = 3 * M * M * b22 * d.tau1 * d.t1;
  if (sign(d.t1) >= 0 && plus_root_nonneg(d.t2, three)) return CubicBranch::kA;
  const Rational tau3 = d.t2 * d.t2 - three;
  const Rational tau4 = d.t1 * d.t2 - 9 * M * M * b22 * d.tau1 * d.t0;
  if (sign(tau3) > 0 && sign(tau4) < 0 &&
      4 * tau4 * d.t2 * tau3 < 4 * d.t1 * tau3 * tau3 + 3 * M * M * b22 * d.tau1 * tau4 * tau4)
    return CubicBranch::kB;
  return CubicBranch::kNone;
}

std::optional<double> omega_of(const std::optional<double>& x) {
  if (!x) return std::nullopt;
  return std::sqrt(std::max(*x, 0.0));
}

}  // namespace

const char* to_string(CiFailure f) {
  switch (f) {
    case CiFailure::kNone: return "none";
    case CiFailure::kConstantTerm: return "r0>=0 (If <= Im Pf / B)";
    case CiFailure::kCubic: return "(i1) and (i2) both fail";
  }
  return "unknown";
}

const char* to_string(CiiFailure f) {
  switch (f) {
    case CiiFailure::kNone: return "none";
    case CiiFailure::kB22Zero: return "b22>0 (leading coefficient -k22^2 M^2 < 0)";
    case CiiFailure::kB22Above4Bf: return "b22<=4Bf (t3 < 0)";
    case CiiFailure::kT0Bound: return "t0>=0 (k22 bound)";
    case CiiFailure::kCubic: return "(ii1) and (ii2) both fail";
  }
  return "unknown";
}

ConditionA check_condition_a(const SystemParams& p, const CheckOptions& opt) {
  (void)opt;
  ConditionA out;
  if (!integral_gains_positive(p)) {
    const auto h = hybrid_matrix_exact(p, {1.0, 0.0});
    out.closed_form = false;
    out.pass = locate_roots(h.h11.den).right == 0;
    return out;
  }
  const auto d = derive<Rational>(p, kNoCoupler);
  const Rational margin = d.a1 * (d.a2 * d.a3 - d.a1 * d.a4) - d.a0 * d.a3 * d.a3;
  const Rational Kf = exact(p.Kf), Bf = exact(p.Bf), al = exact(p.alpha), Im = exact(p.Im),
                 PmPf = exact(p.Pm) * exact(p.Pf), BPm = exact(p.B) + exact(p.Pm);
  const Rational mn = d.mu * d.nu, ms = d.mu + d.nu;
  const Rational lhs = Kf * mn / (Bf * mn + Kf * ms) * d.a3 * d.a3;
  const Rational rhs = Bf * (al + PmPf) * (Im + Kf * al + PmPf * (Kf + Bf * ms)) +
                       (d.kappa3 + Bf * PmPf / Kf * (BPm * ms - exact(p.M) * mn)) * Kf + Im * BPm;
  out.pass = lhs <= rhs;
  agree(out.pass, sign(margin) >= 0, "condition (a): inequality vs Routh margin");
  const ExactPolynomial den{d.a0, d.a1, d.a2, d.a3, d.a4};
  agree(out.pass, locate_roots(den).right == 0, "condition (a): inequality vs root census");
  const auto dd = derive_coefficients(p, kNoCoupler);
  const auto q = quartic_hurwitz(dd.a4, dd.a3, dd.a2, dd.a1, dd.a0);
  out.margin = margin.get_d();
  out.scale = q.scale;
  if (std::abs(out.margin) > 1e-9 * q.scale) agree(out.pass, q.stable, "condition (a): quartic_hurwitz");
  return out;
}

ConditionB check_condition_b(const SystemParams& p, const CheckOptions& opt) {
  ConditionB out;
  if (!integral_gains_positive(p)) {
    const auto h = canonical(hybrid_matrix_exact(p, {1.0, 0.0}).h11);
    const auto loc = locate_roots(h.den);
    out.vacuous = loc.imaginary_frequencies.empty();
    out.pass = loc.imaginary_simple;
    const auto hd = to_double(h);
    const auto dprime = hd.den.derivative();
    for (double w : loc.imaginary_frequencies) {
      const std::complex<double> s(0.0, w);
      const auto r = hd.num.eval(s) / dprime.eval(s);
      if (!(r.real() > 0.0) || std::abs(r.imag()) > 1e-6 * std::abs(r)) out.pass = false;
      out.pole = w;
    }
    return out;
  }
  const auto dd = derive_coefficients(p, kNoCoupler);
  const auto pole = imaginary_axis_pole(dd.a4, dd.a3, dd.a2, dd.a1, dd.a0, opt.boundary_rel_tol);
  if (!pole) {
    out.pass = true;
    return out;
  }
  out.vacuous = false;
  out.pole = pole;
  const auto d = derive<Rational>(p, kNoCoupler);
  const Rational beta = d.a3 * d.b1 - d.a1 * d.b3;
  const Rational lhs = beta * (d.a2 * d.a3 - 2 * d.a1 * d.a4);
  const Rational rhs = (d.a3 * d.b0 - d.a1 * d.b2) * d.a3 * d.a3;
  const Rational scale = abs(beta) * (abs(d.a2 * d.a3) + 2 * abs(d.a1 * d.a4)) +
                         (abs(d.a3 * d.b0) + abs(d.a1 * d.b2)) * d.a3 * d.a3;
  out.beta = beta.get_d();
  out.equality_holds = abs(lhs - rhs) <= exact(opt.boundary_rel_tol) * scale;
  out.pass = sign(beta) > 0 && out.equality_holds;
  const auto r = residues_positive_real(dd.b3, dd.b2, dd.b1, dd.b0, dd.a4, dd.a3, dd.a2, dd.a1,
                                        dd.a0, opt.boundary_rel_tol);
  agree(out.pass, r.positive_real, "condition (b): closed form vs residue test");
  return out;
}

ConditionCi check_condition_c_i(const SystemParams& p) {
  const auto d = derive<Rational>(p, kNoCoupler);
  ConditionCi out;
  const auto sturm =
      is_nonnegative_on(ExactPolynomial{d.r0, d.r1, d.r2, d.r3}, Interval::nonnegative_axis());
  out.pass = sturm.nonnegative;
  out.witness_omega = omega_of(sturm.witness);
  if (!integral_gains_zero(p)) {
    const auto closed = cubic_nonneg_closed_form_exact(d.r3, d.r2, d.r1, d.r0);
    agree(closed.nonnegative, out.pass, "condition (c-i): cubic closed form vs Sturm");
    const auto branch = explicit_c_i(d, p);
    const bool expl = sign(d.r0) >= 0 && branch != CubicBranch::kNone;
    if (sign(d.r3) > 0) agree(expl, out.pass, "condition (c-i): explicit branches vs Sturm");
    out.branch = out.pass ? (branch == CubicBranch::kNone ? closed.branch : branch)
                          : CubicBranch::kNone;
  }
  if (!out.pass) out.failure = sign(d.r0) < 0 ? CiFailure::kConstantTerm : CiFailure::kCubic;
  return out;
}

bool condition_c_ii_closed_form(const SystemParams& p, const VirtualCoupler& vc) {
  if (!(vc.b22 > 0.0)) return false;
  const auto d = derive<Rational>(p, vc);
  return cubic_nonneg_closed_form_exact(d.t3, d.t2, d.t1, d.t0).nonnegative;
}

ConditionCii check_condition_c_ii(const SystemParams& p, const VirtualCoupler& vc) {
  if (vc.k22 == 0.0 && vc.b22 == 0.0)
    throw Error(ErrorCode::kInvalidParams, "coupler needs k22 > 0 or b22 > 0");
  const auto d = derive<Rational>(p, vc);
  ConditionCii out;
  const auto sturm =
      is_nonnegative_on(ExactPolynomial{d.t0, d.t1, d.t2, d.t3}, Interval::nonnegative_axis());
  const bool b22_pos = vc.b22 > 0.0;
  const bool b22_le = exact(vc.b22) <= 4 * exact(p.Bf);
  out.pass = sturm.nonnegative && b22_pos;
  out.witness_omega = omega_of(sturm.witness);
  if (!integral_gains_zero(p)) {
    const bool closed = condition_c_ii_closed_form(p, vc);
    agree(closed, out.pass, "condition (c-ii): cubic closed form vs Sturm");
    const auto branch = explicit_c_ii(d, p, vc);
    const bool expl = b22_pos && b22_le && sign(d.t0) >= 0 && branch != CubicBranch::kNone;
    if (sign(d.t3) > 0) agree(expl, out.pass, "condition (c-ii): explicit branches vs Sturm");
    out.branch = out.pass ? (branch == CubicBranch::kNone ? CubicBranch::kDegenerate : branch)
                          : CubicBranch::kNone;
  }
  if (!out.pass) {
    if (!b22_pos)
      out.failure = CiiFailure::kB22Zero;
    else if (!b22_le)
      out.failure = CiiFailure::kB22Above4Bf;
    else if (sign(d.t0) < 0)
      out.failure = CiiFailure::kT0Bound;
    else
      out.failure = CiiFailure::kCubic;
  }
  return out;
}

PassivityReport check_two_port_passivity(const SystemParams& p, const VirtualCoupler& vc,
                                         const CheckOptions& opt) {
  PassivityReport r;
  r.a = check_condition_a(p, opt);
  r.b = check_condition_b(p, opt);
  r.ci = check_condition_c_i(p);
  r.cii = check_condition_c_ii(p, vc);
  r.overall = r.a.pass && r.b.pass && r.ci.pass && r.cii.pass;
  r.outside_closed_forms = integral_gains_zero(p);
  if (!r.a.pass) r.witnesses.push_back({"a", r.a.margin});
  if (!r.b.pass && r.b.pole) r.witnesses.push_back({"b", *r.b.pole});
  if (r.ci.witness_omega) r.witnesses.push_back({"c-i", *r.ci.witness_omega});
  if (r.cii.witness_omega) r.witnesses.push_back({"c-ii", *r.cii.witness_omega});
  try {
    const auto g = determinant_margin(hybrid_matrix(p, vc), opt.grid(), opt.exec);
    r.grid_min_relative = g.min_relative;
    r.grid_argmin = g.argmin;
    r.grid_pass = g.min_relative >= -opt.grid_rel_tol;
  } catch (const Error& e) {
    if (e.code() != ErrorCode::kPoleAtFrequency) throw;
    r.grid_pass = false;
  }
  return r;
}

double k22_upper_bound(const SystemParams& p, double b22, double tol) {
  p.validate();
  if (!(b22 > 0.0) || exact(b22) > 4 * exact(p.Bf)) return 0.0;
  if (p.Im == 0.0 && p.If > 0.0) return 0.0;
  const auto d = derive_coefficients(p, {0.0, b22});
  if (d.r0 < 0.0) return 0.0;
  auto feasible = [&](double k) { return condition_c_ii_closed_form(p, {k, b22}); };
  double lo = 0.0;
  double hi = std::sqrt(4.0 * b22 * d.r0) / d.e2;
  if (!feasible(lo)) return 0.0;
  if (feasible(hi)) return hi;
  while (hi - lo > tol) {
    const double mid = 0.5 * (lo + hi);
    (feasible(mid) ? lo : hi) = mid;
  }
  return lo;
}

SufficientReport check_sufficient_conditions(const SystemParams& p, const VirtualCoupler& vc,
                                             const CheckOptions& opt) {
  SufficientReport s;
  const auto d = derive<Rational>(p, vc);
  s.r_nonneg = sign(d.r0) >= 0 && sign(d.r1) >= 0 && sign(d.r2) >= 0;
  s.t_nonneg = vc.b22 > 0.0 && sign(d.t0) >= 0 && sign(d.t1) >= 0 && sign(d.t2) >= 0 &&
               sign(d.t3) >= 0;
  s.a_and_b = check_condition_a(p, opt).pass && check_condition_b(p, opt).pass;
  s.pass = s.r_nonneg && s.t_nonneg && s.a_and_b;
  return s;
}

AbsoluteStabilityReport check_absolute_stability(const SystemParams& p, const VirtualCoupler& vc,
                                                 const CheckOptions& opt) {
  AbsoluteStabilityReport r;
  r.a = check_condition_a(p, opt);
  r.b = check_condition_b(p, opt);
  r.ci = check_condition_c_i(p);
  try {
    const auto g = llewellyn_margin(hybrid_matrix(p, vc), opt.grid(), opt.exec);
    r.min_margin = g.min_relative;
    r.argmin_omega = g.argmin;
    r.cii_pass = g.min_relative >= -opt.grid_rel_tol;
  } catch (const Error& e) {
    if (e.code() != ErrorCode::kPoleAtFrequency) throw;
    r.cii_pass = false;
  }
  r.overall = r.a.pass && r.b.pass && r.ci.pass && r.cii_pass;
  return r;
}

}  // namespace sdea
