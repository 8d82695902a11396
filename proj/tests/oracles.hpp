// Independent numeric oracles used only by the test suites. Nothing here
// shares code paths with the exact Sturm machinery under test.
#pragma once

#include <Eigen/Dense>
#include <unsupported/Eigen/Polynomials>

#include <algorithm>
#include <cmath>
#include <complex>
#include <random>
#include <vector>

namespace sdea::oracle {

/// All complex roots of sum c[i] x^i (lowest degree first, nonzero leading).
inline std::vector<std::complex<double>> roots(const std::vector<double>& c) {
  std::vector<double> trimmed = c;
  while (!trimmed.empty() && trimmed.back() == 0.0) trimmed.pop_back();
  if (trimmed.size() <= 1) return {};
  Eigen::VectorXd v(static_cast<Eigen::Index>(trimmed.size()));
  for (std::size_t i = 0; i < trimmed.size(); ++i) v[static_cast<Eigen::Index>(i)] = trimmed[i];
  Eigen::PolynomialSolver<double, Eigen::Dynamic> solver(v);
  std::vector<std::complex<double>> out;
  for (Eigen::Index i = 0; i < solver.roots().size(); ++i) out.push_back(solver.roots()[i]);
  return out;
}

inline double horner(const std::vector<double>& c, double x) {
  double acc = 0.0;
  for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * x + *it;
  return acc;
}

inline std::complex<double> horner(const std::vector<double>& c, std::complex<double> x) {
  std::complex<double> acc = 0.0;
  for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * x + *it;
  return acc;
}

inline std::vector<double> derivative(const std::vector<double>& c) {
  std::vector<double> d;
  for (std::size_t i = 1; i < c.size(); ++i) d.push_back(c[i] * static_cast<double>(i));
  return d;
}

/// Dense-sampling non-negativity on [0, hi] plus the sign of the leading
/// coefficient for the tail.
inline bool sampled_nonneg(const std::vector<double>& c, double hi, int n) {
  std::vector<double> t = c;
  while (!t.empty() && t.back() == 0.0) t.pop_back();
  if (t.empty()) return true;
  if (t.back() < 0.0) return false;
  for (int i = 0; i <= n; ++i) {
    const double x = hi * static_cast<double>(i) / n;
    if (horner(t, x) < 0.0) return false;
  }
  return true;
}

/// Cauchy root bound, used to stretch sampling ranges past every root.
inline double cauchy_bound(const std::vector<double>& c) {
  std::vector<double> t = c;
  while (!t.empty() && t.back() == 0.0) t.pop_back();
  double m = 0.0;
  for (std::size_t i = 0; i + 1 < t.size(); ++i) m = std::max(m, std::abs(t[i] / t.back()));
  return 1.0 + m;
}

/// Residue of num/den at a simple pole p: num(p) / den'(p).
inline std::complex<double> residue(const std::vector<double>& num,
                                    const std::vector<double>& den,
                                    std::complex<double> pole) {
  return horner(num, pole) / horner(derivative(den), pole);
}

inline std::vector<double> log_grid(double lo, double hi, int n) {
  std::vector<double> w(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i)
    w[static_cast<std::size_t>(i)] =
        std::pow(10.0, std::log10(lo) + (std::log10(hi) - std::log10(lo)) * i / (n - 1));
  return w;
}

}  // namespace sdea::oracle
