#include "sdea/sturm.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace sdea {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void validate(const Interval& iv) {
  if (std::isnan(iv.lo) || std::isnan(iv.hi) || !(iv.lo < iv.hi))
    throw Error(ErrorCode::kInvalidInterval, "interval requires lo < hi");
}

int sign_at_infinity(const ExactPolynomial& p, bool positive) {
  const int s = sign(p.leading());
  if (positive || p.degree() % 2 == 0) return s;
  return -s;
}

int count_variations(const std::vector<int>& signs) {
  int prev = 0;
  int changes = 0;
  for (int s : signs) {
    if (s == 0) continue;
    if (prev != 0 && s != prev) ++changes;
    prev = s;
  }
  return changes;
}

// Cauchy bound on the magnitude of every real root.
double root_bound(const ExactPolynomial& p) {
  Rational m = 0;
  const Rational lead = abs(p.leading());
  for (int i = 0; i < p.degree(); ++i) m = std::max(m, Rational(abs(p.coeff(i)) / lead));
  return (1.0 + m.get_d()) * (1.0 + 1e-12) + 1.0;
}

}  // namespace

Interval Interval::nonnegative_axis() { return {0.0, kInf}; }
Interval Interval::real_line() { return {-kInf, kInf}; }

SturmChain remainder_chain(ExactPolynomial f0, ExactPolynomial f1) {
  SturmChain chain;
  chain.seq.push_back(std::move(f0));
  if (f1.is_zero()) return chain;
  chain.seq.push_back(std::move(f1));
  for (;;) {
    const auto& a = chain.seq[chain.seq.size() - 2];
    const auto& b = chain.seq.back();
    if (b.degree() <= 0) break;
    auto r = divmod(a, b).second;
    if (r.is_zero()) break;
    chain.seq.push_back(-r);
  }
  return chain;
}

SturmChain sturm_sequence(const ExactPolynomial& p) {
  if (p.is_zero()) throw Error(ErrorCode::kZeroPolynomial, "Sturm sequence of zero");
  auto f = square_free_part(p);
  auto df = f.derivative();
  return remainder_chain(std::move(f), std::move(df));
}

SturmChain sturm_sequence(const Polynomial& p) { return sturm_sequence(to_exact(p)); }

int sign_variations(const SturmChain& chain, const Rational& at) {
  std::vector<int> s;
  s.reserve(chain.seq.size());
  for (const auto& p : chain.seq) s.push_back(sign(p(at)));
  return count_variations(s);
}

int sign_variations(const SturmChain& chain, ExtendedReal at) {
  if (std::isinf(at)) {
    std::vector<int> s;
    s.reserve(chain.seq.size());
    for (const auto& p : chain.seq) s.push_back(sign_at_infinity(p, at > 0));
    return count_variations(s);
  }
  return sign_variations(chain, exact(at));
}

int count_real_roots(const ExactPolynomial& p, Interval interval) {
  validate(interval);
  if (p.is_zero()) throw Error(ErrorCode::kZeroPolynomial, "root count of zero");
  if (p.degree() == 0) return 0;
  const auto chain = sturm_sequence(p);
  // V(lo) - V(hi) counts roots in (lo, hi]; drop a root sitting on hi.
  int n = sign_variations(chain, interval.lo) - sign_variations(chain, interval.hi);
  if (std::isfinite(interval.hi) && sign(chain.seq.front()(exact(interval.hi))) == 0) --n;
  return n;
}

int count_real_roots(const Polynomial& p, Interval interval) {
  return count_real_roots(to_exact(p), interval);
}

int cauchy_index(const ExactPolynomial& num, const ExactPolynomial& den) {
  if (num.is_zero()) return 0;
  const auto chain = remainder_chain(den, num);
  return sign_variations(chain, -kInf) - sign_variations(chain, kInf);
}

std::vector<double> real_roots(const ExactPolynomial& p, Interval interval,
                               double rel_width) {
  validate(interval);
  std::vector<double> roots;
  if (p.degree() <= 0) return roots;
  const auto chain = sturm_sequence(p);
  const auto& f = chain.seq.front();
  const double bound = root_bound(f);
  const double lo = std::max(interval.lo, -bound);
  const double hi = std::min(interval.hi, bound);
  if (!(lo < hi)) return roots;

  // Roots in (a, b] counted by sign variations; endpoints stay doubles so the
  // exact evaluation never meets large denominators.
  auto count = [&](double a, double b) {
    return sign_variations(chain, a) - sign_variations(chain, b);
  };
  struct Span {
    double a, b;
    int n;
  };
  std::vector<Span> work{{lo, hi, count(lo, hi)}};
  while (!work.empty()) {
    Span s = work.back();
    work.pop_back();
    if (s.n <= 0) continue;
    const double mid = 0.5 * (s.a + s.b);
    const bool narrow =
        mid <= s.a || mid >= s.b ||
        (s.b - s.a) <= rel_width * std::max({std::abs(s.a), std::abs(s.b), 1e-300});
    if (narrow) {
      roots.insert(roots.end(), static_cast<std::size_t>(s.n), s.b);
      continue;
    }
    const int left = count(s.a, mid);
    work.push_back({mid, s.b, s.n - left});
    work.push_back({s.a, mid, left});
  }
  std::sort(roots.begin(), roots.end());
  roots.erase(std::unique(roots.begin(), roots.end()), roots.end());
  // Open interval: a root exactly on hi is excluded.
  if (!roots.empty() && std::isfinite(interval.hi) && roots.back() >= interval.hi &&
      sign(f(exact(interval.hi))) == 0)
    roots.pop_back();
  return roots;
}

namespace {

double sample_point(double a, double b) {
  if (std::isinf(a) && std::isinf(b)) return 0.0;
  if (std::isinf(a)) return b - 1.0 - std::abs(b);
  if (std::isinf(b)) return a + 1.0 + std::abs(a);
  return 0.5 * (a + b);
}

// Golden-section minimiser of p on [a, b]; used only to place a witness.
double minimise_on(const ExactPolynomial& p, double a, double b) {
  const Polynomial pd = to_double(p);
  constexpr double g = 0.6180339887498949;
  double x1 = b - g * (b - a), x2 = a + g * (b - a);
  double f1 = pd(x1), f2 = pd(x2);
  for (int it = 0; it < 200 && (b - a) > 1e-14 * (1.0 + std::abs(a) + std::abs(b)); ++it) {
    if (f1 < f2) {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - g * (b - a);
      f1 = pd(x1);
    } else {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + g * (b - a);
      f2 = pd(x2);
    }
  }
  return f1 < f2 ? x1 : x2;
}

}  // namespace

NonnegativityVerdict is_nonnegative_on(const ExactPolynomial& p, Interval interval) {
  validate(interval);
  if (p.is_zero()) return {};
  if (p.degree() == 0) {
    if (sign(p.leading()) >= 0) return {};
    return {false, sample_point(interval.lo, interval.hi)};
  }
  const auto crossings = real_roots(odd_multiplicity_part(p), interval);
  std::vector<double> breaks{interval.lo};
  breaks.insert(breaks.end(), crossings.begin(), crossings.end());
  breaks.push_back(interval.hi);
  for (std::size_t i = 0; i + 1 < breaks.size(); ++i) {
    const double a = breaks[i], b = breaks[i + 1];
    double x = sample_point(a, b);
    // A sample landing on an even-multiplicity zero says nothing; nudge it.
    for (int tries = 0; tries < 8 && sign(p(exact(x))) == 0; ++tries)
      x = std::isfinite(a) && std::isfinite(b) ? a + (b - a) * (0.5 + 0.0625 * (tries + 1))
                                               : x + 1.0 + std::abs(x);
    if (sign(p(exact(x))) >= 0) continue;
    if (std::isfinite(a) && std::isfinite(b)) {
      const double w = minimise_on(p, a, b);
      if (sign(p(exact(w))) < 0) x = w;
    }
    return {false, x};
  }
  return {};
}

NonnegativityVerdict is_nonnegative_on(const Polynomial& p, Interval interval) {
  return is_nonnegative_on(to_exact(p), interval);
}

bool cubic_nonneg_closed_form(double p3, double p2, double p1, double p0) {
  if (p3 == 0.0)
    return is_nonnegative_on(Polynomial{p0, p1, p2}, Interval::nonnegative_axis())
        .nonnegative;
  if (p3 < 0.0 || p0 < 0.0) return false;
  if (p1 >= 0.0 && p2 >= -std::sqrt(3.0 * p1 * p3)) return true;
  const double s = p2 * p2 - 3.0 * p1 * p3;
  const double q = p1 * p2 - 9.0 * p0 * p3;
  return s > 0.0 && q < 0.0 && 4.0 * p2 * q < 4.0 * p1 * s + 3.0 * p3 * q * q / s;
}

CubicVerdict cubic_nonneg_closed_form_exact(const Rational& p3, const Rational& p2,
                                            const Rational& p1, const Rational& p0) {
  if (sign(p3) == 0) {
    const bool ok =
        is_nonnegative_on(ExactPolynomial{p0, p1, p2}, Interval::nonnegative_axis())
            .nonnegative;
    return {ok, CubicBranch::kDegenerate};
  }
  if (sign(p3) < 0 || sign(p0) < 0) return {false, CubicBranch::kNone};
  // p2 >= -sqrt(3 p1 p3)  <=>  p2 >= 0 or p2^2 <= 3 p1 p3
  if (sign(p1) >= 0 && (sign(p2) >= 0 || p2 * p2 <= 3 * p1 * p3))
    return {true, CubicBranch::kA};
  const Rational s = p2 * p2 - 3 * p1 * p3;
  const Rational q = p1 * p2 - 9 * p0 * p3;
  // Third inequality multiplied through by s > 0.
  if (sign(s) > 0 && sign(q) < 0 && 4 * p2 * q * s < 4 * p1 * s * s + 3 * p3 * q * q)
    return {true, CubicBranch::kB};
  return {false, CubicBranch::kNone};
}

}  // namespace sdea
