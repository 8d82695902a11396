#include "sdea/polynomial.hpp"

#include <sstream>

namespace sdea {

const char* to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::kZeroPolynomial: return "ZeroPolynomial";
    case ErrorCode::kInvalidInterval: return "InvalidInterval";
    case ErrorCode::kNonPositiveCoefficient: return "NonPositiveCoefficient";
    case ErrorCode::kNoImaginaryPole: return "NoImaginaryPole";
    case ErrorCode::kInvalidParams: return "InvalidParams";
    case ErrorCode::kPoleAtFrequency: return "PoleAtFrequency";
    case ErrorCode::kDegenerateTermination: return "DegenerateTermination";
    case ErrorCode::kDesiredExceedsCoupler: return "DesiredExceedsCoupler";
    case ErrorCode::kBaselineNotPassive: return "BaselineNotPassive";
    case ErrorCode::kConfig: return "ConfigError";
  }
  return "Unknown";
}

ExactPolynomial to_exact(const Polynomial& p) {
  std::vector<Rational> c;
  c.reserve(p.coeffs().size());
  for (double v : p.coeffs()) c.push_back(exact(v));
  return ExactPolynomial(std::move(c));
}

Polynomial to_double(const ExactPolynomial& p) {
  std::vector<double> c;
  c.reserve(p.coeffs().size());
  for (const auto& v : p.coeffs()) c.push_back(v.get_d());
  return Polynomial(std::move(c));
}

ExactPolynomial gcd(ExactPolynomial a, ExactPolynomial b) {
  while (!b.is_zero()) {
    auto r = divmod(a, b).second;
    a = std::move(b);
    b = std::move(r);
  }
  return a.monic();
}

ExactPolynomial square_free_part(const ExactPolynomial& p) {
  if (p.degree() <= 0) return p;
  return divmod(p, gcd(p, p.derivative())).first;
}

ExactPolynomial odd_multiplicity_part(const ExactPolynomial& p) {
  const ExactPolynomial one{Rational(1)};
  if (p.degree() <= 0) return one;
  // Yun: p = prod a_i^i with a_i square-free and pairwise coprime.
  const auto dp = p.derivative();
  const auto a0 = gcd(p, dp);
  auto b = divmod(p, a0).first;
  auto c = divmod(dp, a0).first;
  auto d = c - b.derivative();
  ExactPolynomial odd = one;
  for (int i = 1; b.degree() > 0; ++i) {
    const auto a = gcd(b, d);
    if (i % 2 == 1) odd = odd * a;
    b = divmod(b, a).first;
    c = divmod(d, a).first;
    d = c - b.derivative();
  }
  return odd;
}

namespace {

template <class T>
void print(std::ostream& os, const BasicPolynomial<T>& p) {
  if (p.is_zero()) {
    os << "0";
    return;
  }
  bool first = true;
  for (int k = p.degree(); k >= 0; --k) {
    const auto c = p.coeff(k);
    if (c == T(0)) continue;
    if (!first) os << " + ";
    first = false;
    os << c;
    if (k >= 1) os << "*x";
    if (k >= 2) os << "^" << k;
  }
}

}  // namespace

std::ostream& operator<<(std::ostream& os, const Polynomial& p) {
  print(os, p);
  return os;
}

std::ostream& operator<<(std::ostream& os, const ExactPolynomial& p) {
  print(os, p);
  return os;
}

}  // namespace sdea
