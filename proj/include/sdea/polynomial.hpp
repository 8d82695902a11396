#pragma once

#include <algorithm>
#include <cstddef>
#include <initializer_list>
#include <ostream>
#include <type_traits>
#include <utility>
#include <vector>

#include "sdea/error.hpp"
#include "sdea/rational.hpp"

namespace sdea {

/// Univariate polynomial with coefficients stored lowest degree first.
///
/// Trailing zero coefficients are trimmed on construction, so the zero
/// polynomial is the empty coefficient list and `degree()` returns -1 for it.
/// `T` is `double` for evaluation-facing code and `Rational` wherever signs
/// must be decided without rounding (Sturm chains, gcds, positivity tests).
template <class T>
class BasicPolynomial {
 public:
  using value_type = T;

  BasicPolynomial() = default;
  explicit BasicPolynomial(std::vector<T> coeffs) : c_(std::move(coeffs)) {
    trim();
  }
  BasicPolynomial(std::initializer_list<T> coeffs) : c_(coeffs) { trim(); }

  static BasicPolynomial constant(const T& v) { return BasicPolynomial({v}); }

  static BasicPolynomial monomial(const T& v, int degree) {
    std::vector<T> c(static_cast<std::size_t>(degree) + 1, T(0));
    c.back() = v;
    return BasicPolynomial(std::move(c));
  }

  int degree() const { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }
  bool is_constant() const { return c_.size() <= 1; }

  const std::vector<T>& coeffs() const { return c_; }

  /// Coefficient of x^i; zero outside the stored range.
  T coeff(int i) const {
    if (i < 0 || i > degree()) return T(0);
    return c_[static_cast<std::size_t>(i)];
  }

  T leading() const { return is_zero() ? T(0) : c_.back(); }

  /// Horner evaluation; `X` may be wider than `T` (e.g. complex<double>).
  template <class X>
  X eval(const X& x) const {
    X acc(0);
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) {
      if constexpr (std::is_same_v<X, T>)
        acc = acc * x + *it;
      else
        acc = acc * x + X(to_double(*it));
    }
    return acc;
  }

  T operator()(const T& x) const { return eval<T>(x); }

  BasicPolynomial derivative() const {
    if (c_.size() <= 1) return {};
    std::vector<T> d(c_.size() - 1);
    for (std::size_t i = 1; i < c_.size(); ++i)
      d[i - 1] = c_[i] * T(static_cast<long>(i));
    return BasicPolynomial(std::move(d));
  }

  BasicPolynomial operator-() const {
    std::vector<T> c = c_;
    for (auto& v : c) v = -v;
    return BasicPolynomial(std::move(c));
  }

  friend BasicPolynomial operator+(const BasicPolynomial& a,
                                   const BasicPolynomial& b) {
    std::vector<T> c(std::max(a.c_.size(), b.c_.size()), T(0));
    for (std::size_t i = 0; i < a.c_.size(); ++i) c[i] += a.c_[i];
    for (std::size_t i = 0; i < b.c_.size(); ++i) c[i] += b.c_[i];
    return BasicPolynomial(std::move(c));
  }

  friend BasicPolynomial operator-(const BasicPolynomial& a,
                                   const BasicPolynomial& b) {
    return a + (-b);
  }

  friend BasicPolynomial operator*(const BasicPolynomial& a,
                                   const BasicPolynomial& b) {
    if (a.is_zero() || b.is_zero()) return {};
    std::vector<T> c(a.c_.size() + b.c_.size() - 1, T(0));
    for (std::size_t i = 0; i < a.c_.size(); ++i)
      for (std::size_t j = 0; j < b.c_.size(); ++j) c[i + j] += a.c_[i] * b.c_[j];
    return BasicPolynomial(std::move(c));
  }

  friend BasicPolynomial operator*(const T& k, const BasicPolynomial& p) {
    std::vector<T> c = p.c_;
    for (auto& v : c) v *= k;
    return BasicPolynomial(std::move(c));
  }

  friend bool operator==(const BasicPolynomial& a, const BasicPolynomial& b) {
    return a.c_ == b.c_;
  }

  /// Euclidean division: returns (q, r) with a = b*q + r, deg r < deg b.
  friend std::pair<BasicPolynomial, BasicPolynomial> divmod(
      const BasicPolynomial& a, const BasicPolynomial& b) {
    if (b.is_zero()) throw Error(ErrorCode::kZeroPolynomial, "division by zero polynomial");
    std::vector<T> r = a.c_;
    const int db = b.degree();
    const int dq = a.degree() - db;
    if (dq < 0) return {BasicPolynomial(), a};
    std::vector<T> q(static_cast<std::size_t>(dq) + 1, T(0));
    const T lead = b.leading();
    for (int k = dq; k >= 0; --k) {
      const T f = r[static_cast<std::size_t>(k + db)] / lead;
      q[static_cast<std::size_t>(k)] = f;
      for (int j = 0; j <= db; ++j)
        r[static_cast<std::size_t>(k + j)] -= f * b.c_[static_cast<std::size_t>(j)];
      r[static_cast<std::size_t>(k + db)] = T(0);
    }
    return {BasicPolynomial(std::move(q)), BasicPolynomial(std::move(r))};
  }

  /// Same polynomial scaled to a unit leading coefficient.
  BasicPolynomial monic() const {
    if (is_zero()) return {};
    return (T(1) / leading()) * *this;
  }

  /// Count of leading factors of x (lowest nonzero coefficient index).
  int low_order() const {
    int k = 0;
    while (k <= degree() && c_[static_cast<std::size_t>(k)] == T(0)) ++k;
    return k;
  }

  /// Divides out x^k; the caller guarantees the low k coefficients vanish.
  BasicPolynomial shift_down(int k) const {
    if (k <= 0) return *this;
    if (k > degree()) return {};
    return BasicPolynomial(std::vector<T>(c_.begin() + k, c_.end()));
  }

 private:
  void trim() {
    if constexpr (std::is_same_v<T, Rational>)
      for (auto& v : c_) v.canonicalize();
    while (!c_.empty() && c_.back() == T(0)) c_.pop_back();
  }

  std::vector<T> c_;
};

using Polynomial = BasicPolynomial<double>;
using ExactPolynomial = BasicPolynomial<Rational>;

ExactPolynomial to_exact(const Polynomial& p);
Polynomial to_double(const ExactPolynomial& p);

/// Monic gcd by the Euclidean algorithm (exact arithmetic only).
ExactPolynomial gcd(ExactPolynomial a, ExactPolynomial b);

/// p / gcd(p, p'): the polynomial with the same distinct roots, all simple.
ExactPolynomial square_free_part(const ExactPolynomial& p);

/// Product of the square-free factors of odd multiplicity (Yun's
/// decomposition). Its real roots are exactly the sign changes of p.
ExactPolynomial odd_multiplicity_part(const ExactPolynomial& p);

/// Even and odd parts of p(jw) as polynomials in x = w^2:
/// p(jw) = even(x) + j*w*odd(x).
template <class T>
std::pair<BasicPolynomial<T>, BasicPolynomial<T>> split_imaginary_axis(
    const BasicPolynomial<T>& p) {
  std::vector<T> ev, od;
  for (int k = 0; k <= p.degree(); ++k) {
    const int i = k / 2;
    const T sgn = (i % 2 == 0) ? T(1) : T(-1);
    if (k % 2 == 0)
      ev.push_back(sgn * p.coeff(k));
    else
      od.push_back(sgn * p.coeff(k));
  }
  return {BasicPolynomial<T>(std::move(ev)), BasicPolynomial<T>(std::move(od))};
}

/// Re(N(jw) D(-jw)) as a polynomial in x = w^2.
template <class T>
BasicPolynomial<T> real_part_product(const BasicPolynomial<T>& num,
                                     const BasicPolynomial<T>& den) {
  const auto [ne, no] = split_imaginary_axis(num);
  const auto [de, d_o] = split_imaginary_axis(den);
  const BasicPolynomial<T> x{T(0), T(1)};
  return ne * de + x * (no * d_o);
}

/// |p(jw)|^2 as a polynomial in x = w^2.
template <class T>
BasicPolynomial<T> squared_magnitude(const BasicPolynomial<T>& p) {
  return real_part_product(p, p);
}

std::ostream& operator<<(std::ostream& os, const Polynomial& p);
std::ostream& operator<<(std::ostream& os, const ExactPolynomial& p);

}  // namespace sdea
