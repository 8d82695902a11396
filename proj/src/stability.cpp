#include "sdea/stability.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace sdea {

namespace {

Rational quartic_margin(const Rational& a4, const Rational& a3, const Rational& a2,
                        const Rational& a1, const Rational& a0) {
  return a1 * (a2 * a3 - a1 * a4) - a0 * a3 * a3;
}

void require_positive(std::initializer_list<double> a) {
  for (double v : a)
    if (!(v > 0.0) || !std::isfinite(v))
      throw Error(ErrorCode::kNonPositiveCoefficient, "quartic test needs a_i > 0");
}

// q(w) = e(w^2) for a polynomial e in x = w^2, optionally times w.
ExactPolynomial in_omega(const ExactPolynomial& e, bool times_w) {
  std::vector<Rational> c(static_cast<std::size_t>(2 * std::max(e.degree(), 0) + 2), 0);
  for (int i = 0; i <= e.degree(); ++i)
    c[static_cast<std::size_t>(2 * i + (times_w ? 1 : 0))] = e.coeff(i);
  return ExactPolynomial(std::move(c));
}

// Real roots of p counted with multiplicity.
int real_roots_with_multiplicity(ExactPolynomial p) {
  int total = 0;
  while (p.degree() > 0) {
    total += count_real_roots(p, Interval::real_line());
    p = gcd(p, p.derivative());
  }
  return total;
}

}  // namespace

ExactRationalFunction to_exact(const RationalFunction& f) {
  return {to_exact(f.num), to_exact(f.den)};
}

RationalFunction to_double(const ExactRationalFunction& f) {
  return {to_double(f.num), to_double(f.den)};
}

ExactRationalFunction canonical(const ExactRationalFunction& f) {
  if (f.den.is_zero()) throw Error(ErrorCode::kZeroPolynomial, "zero denominator");
  if (f.num.is_zero()) return {{}, ExactPolynomial{1}};
  const auto g = gcd(f.num, f.den);
  auto num = divmod(f.num, g).first;
  auto den = divmod(f.den, g).first;
  const Rational k = 1 / den.leading();
  return {k * num, k * den};
}

ExactRationalFunction operator+(const ExactRationalFunction& a, const ExactRationalFunction& b) {
  return canonical({a.num * b.den + b.num * a.den, a.den * b.den});
}

ExactRationalFunction operator-(const ExactRationalFunction& a, const ExactRationalFunction& b) {
  return canonical({a.num * b.den - b.num * a.den, a.den * b.den});
}

ExactRationalFunction operator*(const ExactRationalFunction& a, const ExactRationalFunction& b) {
  return canonical({a.num * b.num, a.den * b.den});
}

ExactRationalFunction operator/(const ExactRationalFunction& a, const ExactRationalFunction& b) {
  if (b.num.is_zero()) throw Error(ErrorCode::kZeroPolynomial, "division by zero function");
  return canonical({a.num * b.den, a.den * b.num});
}

QuarticVerdict quartic_hurwitz(double a4, double a3, double a2, double a1, double a0) {
  require_positive({a4, a3, a2, a1, a0});
  const Rational m = quartic_margin(exact(a4), exact(a3), exact(a2), exact(a1), exact(a0));
  QuarticVerdict v;
  v.stable = sign(m) >= 0;
  v.margin = m.get_d();
  v.scale = std::max({a1 * a2 * a3, a1 * a1 * a4, a0 * a3 * a3});
  return v;
}

std::optional<double> imaginary_axis_pole(double a4, double a3, double a2, double a1,
                                          double a0, double rel_tol) {
  for (double v : {a4, a3, a2, a1, a0})
    if (!(v > 0.0)) return std::nullopt;
  const auto q = quartic_hurwitz(a4, a3, a2, a1, a0);
  if (std::abs(q.margin) > rel_tol * q.scale) return std::nullopt;
  const double d = a2 * a3 - a1 * a4;
  if (!(d > 0.0)) return std::nullopt;
  return std::sqrt(a0 * a3 / d);
}

ResidueVerdict residues_positive_real(double b3, double b2, double b1, double b0, double a4,
                                      double a3, double a2, double a1, double a0,
                                      double rel_tol) {
  const auto p = imaginary_axis_pole(a4, a3, a2, a1, a0, rel_tol);
  if (!p) throw Error(ErrorCode::kNoImaginaryPole, "denominator has no imaginary pair");
  ResidueVerdict v;
  v.pole = *p;
  v.beta = a3 * b1 - a1 * b3;
  const double lhs = v.beta * (a2 * a3 - 2.0 * a1 * a4);
  const double rhs = (a3 * b0 - a1 * b2) * a3 * a3;
  const double scale = std::abs(v.beta) * (std::abs(a2 * a3) + 2.0 * std::abs(a1 * a4)) +
                       (std::abs(a3 * b0) + std::abs(a1 * b2)) * a3 * a3;
  v.equality_holds = std::abs(lhs - rhs) <= rel_tol * scale;
  v.beta_positive = v.beta > 0.0;
  v.positive_real = v.equality_holds && v.beta_positive;
  const std::complex<double> s(0.0, v.pole);
  const Polynomial num{0.0, b0, b1, b2, b3};
  const Polynomial dden{a1, 2.0 * a2, 3.0 * a3, 4.0 * a4};
  v.residue = num.eval(s) / dden.eval(s);
  return v;
}

RootLocation locate_roots(const ExactPolynomial& p) {
  RootLocation loc;
  const int n = p.degree();
  if (n <= 0) return loc;
  const auto [e, o] = split_imaginary_axis(p);
  const auto p0 = in_omega(e, false);
  const auto p1 = in_omega(o, true);
  const auto g = gcd(p0, p1);
  const int dg = g.degree();
  const int index = (n % 2 == 1) ? cauchy_index(p0, p1) : cauchy_index(-p1, p0);
  const int m = real_roots_with_multiplicity(g);
  // Non-real roots of g are root pairs mirrored across the axis.
  loc.right = (n - dg - index) / 2 + (dg - m) / 2;
  loc.imaginary = m;
  loc.left = n - loc.right - m;
  if (dg > 0) {
    if (sign(g.coeff(0)) == 0) loc.imaginary_frequencies.push_back(0.0);
    const auto pos = real_roots(g, Interval::nonnegative_axis());
    loc.imaginary_frequencies.insert(loc.imaginary_frequencies.end(), pos.begin(), pos.end());
    loc.imaginary_simple = real_roots_with_multiplicity(square_free_part(g)) == m;
  }
  return loc;
}

std::vector<double> log_grid(double lo, double hi, int n) {
  std::vector<double> w(static_cast<std::size_t>(std::max(n, 0)));
  if (n == 1) w[0] = lo;
  const double l0 = std::log10(lo), l1 = std::log10(hi);
  for (int i = 0; n > 1 && i < n; ++i)
    w[static_cast<std::size_t>(i)] = std::pow(10.0, l0 + (l1 - l0) * i / (n - 1));
  return w;
}

PositiveRealVerdict positive_real(const ExactRationalFunction& z, const PositiveRealOptions& opt) {
  const auto f = canonical(z);
  PositiveRealVerdict v;
  if (f.num.is_zero()) {
    v.stable = v.residues_ok = v.real_part_nonneg = true;
    return v;
  }
  const auto& d = f.den;
  const auto loc = locate_roots(d);
  v.stable = loc.right == 0;
  if (d.degree() == 4 && std::all_of(d.coeffs().begin(), d.coeffs().end(),
                                     [](const Rational& c) { return sign(c) > 0; })) {
    const bool hurwitz =
        sign(quartic_margin(d.coeff(4), d.coeff(3), d.coeff(2), d.coeff(1), d.coeff(0))) >= 0;
    if (hurwitz != v.stable) throw std::logic_error("quartic test disagrees with root census");
  }

  v.imaginary_axis_poles = loc.imaginary_frequencies;
  v.residues_ok = loc.imaginary_simple;
  const int excess = f.num.degree() - d.degree();
  if (excess > 1) v.residues_ok = false;
  if (excess == 1 && sign(f.num.leading() / d.leading()) <= 0) v.residues_ok = false;
  const auto fd = to_double(f);
  const auto dprime = fd.den.derivative();
  for (double w : loc.imaginary_frequencies) {
    const std::complex<double> s(0.0, w);
    const auto r = fd.num.eval(s) / dprime.eval(s);
    if (!(r.real() > 0.0) || std::abs(r.imag()) > opt.residue_tol * std::abs(r))
      v.residues_ok = false;
  }

  const auto re = real_part_product(f.num, d);
  const auto nn = is_nonnegative_on(re, Interval::nonnegative_axis());
  v.real_part_nonneg = nn.nonnegative;
  if (nn.witness) v.witness_frequency = std::sqrt(std::max(*nn.witness, 0.0));

  v.margin = std::numeric_limits<double>::infinity();
  for (double w : log_grid(opt.omega_min, opt.omega_max, opt.points)) {
    const double r = fd.at_jw(w).real();
    if (std::isfinite(r)) v.margin = std::min(v.margin, r);
  }
  return v;
}

PositiveRealVerdict positive_real(const RationalFunction& z, const PositiveRealOptions& opt) {
  return positive_real(to_exact(z), opt);
}

}  // namespace sdea
