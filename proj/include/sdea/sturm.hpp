#pragma once

#include <optional>
#include <vector>

#include "sdea/polynomial.hpp"

namespace sdea {

/// Remainder chain f0, f1, -rem(f0, f1), ... computed exactly.
///
/// For a Sturm sequence proper, f0 is square-free and f1 = f0'; the
/// generalised form (arbitrary f1) computes Cauchy indices.
struct SturmChain {
  std::vector<ExactPolynomial> seq;
};

/// Finite point or +-infinity on the extended real line.
using ExtendedReal = double;

/// Open interval (lo, hi); either end may be infinite.
struct Interval {
  double lo;
  double hi;

  static Interval nonnegative_axis();  // [0, inf)
  static Interval real_line();         // (-inf, inf)
};

SturmChain remainder_chain(ExactPolynomial f0, ExactPolynomial f1);

/// Sturm sequence of the square-free part of p.
SturmChain sturm_sequence(const ExactPolynomial& p);
SturmChain sturm_sequence(const Polynomial& p);

/// Sign changes of the chain evaluated at `at`; zeros are skipped.
int sign_variations(const SturmChain& chain, ExtendedReal at);
int sign_variations(const SturmChain& chain, const Rational& at);

/// Distinct real roots of p in the open interval (lo, hi).
int count_real_roots(const ExactPolynomial& p, Interval interval);
int count_real_roots(const Polynomial& p, Interval interval);

/// Cauchy index of num/den over the real line.
int cauchy_index(const ExactPolynomial& num, const ExactPolynomial& den);

/// Isolated real roots of p inside (lo, hi), ascending, refined to
/// relative width `rel_width`. Multiplicities are not reported.
std::vector<double> real_roots(const ExactPolynomial& p, Interval interval,
                               double rel_width = 1e-15);

struct NonnegativityVerdict {
  bool nonnegative = true;
  /// A point where p < 0 when `nonnegative` is false.
  std::optional<double> witness;
};

/// True iff p(x) >= 0 on the interval. Roots of even multiplicity are
/// allowed; any sign-crossing root in the open interval makes the verdict
/// false. Endpoints are irrelevant for continuous p, so open and closed
/// intervals agree.
NonnegativityVerdict is_nonnegative_on(const ExactPolynomial& p, Interval interval);
NonnegativityVerdict is_nonnegative_on(const Polynomial& p, Interval interval);

enum class CubicBranch { kNone, kA, kB, kDegenerate };

struct CubicVerdict {
  bool nonnegative = false;
  /// kA / kB name the satisfied alternative; kDegenerate means the leading
  /// coefficient vanished and the Sturm test decided.
  CubicBranch branch = CubicBranch::kNone;
};

/// Closed-form test of p3 x^3 + p2 x^2 + p1 x + p0 >= 0 on [0, inf):
/// p3 >= 0, p0 >= 0 and either
///   (a) p1 >= 0 and p2 >= -sqrt(3 p1 p3), or
///   (b) s = p2^2 - 3 p1 p3 > 0, q = p1 p2 - 9 p0 p3 < 0 and
///       4 p2 q < 4 p1 s + 3 p3 q^2 / s.
bool cubic_nonneg_closed_form(double p3, double p2, double p1, double p0);

/// Exact evaluation of the same conditions; square roots are compared by
/// sign-aware squaring.
CubicVerdict cubic_nonneg_closed_form_exact(const Rational& p3, const Rational& p2,
                                            const Rational& p1, const Rational& p0);

}  // namespace sdea
