#pragma once

#include <complex>
#include <optional>
#include <vector>

#include "sdea/polynomial.hpp"
#include "sdea/sturm.hpp"

namespace sdea {

/// num(s) / den(s) in the Laplace variable.
template <class T>
struct BasicRationalFunction {
  BasicPolynomial<T> num;
  BasicPolynomial<T> den;

  std::complex<double> operator()(std::complex<double> s) const {
    return num.template eval<std::complex<double>>(s) /
           den.template eval<std::complex<double>>(s);
  }
  std::complex<double> at_jw(double omega) const { return (*this)({0.0, omega}); }
};

using RationalFunction = BasicRationalFunction<double>;
using ExactRationalFunction = BasicRationalFunction<Rational>;

ExactRationalFunction to_exact(const RationalFunction& f);
RationalFunction to_double(const ExactRationalFunction& f);

/// gcd(num, den) divided out, denominator monic. Throws ZeroPolynomial on a
/// zero denominator.
ExactRationalFunction canonical(const ExactRationalFunction& f);

ExactRationalFunction operator+(const ExactRationalFunction& a, const ExactRationalFunction& b);
ExactRationalFunction operator-(const ExactRationalFunction& a, const ExactRationalFunction& b);
ExactRationalFunction operator*(const ExactRationalFunction& a, const ExactRationalFunction& b);
ExactRationalFunction operator/(const ExactRationalFunction& a, const ExactRationalFunction& b);

struct QuarticVerdict {
  bool stable = false;
  /// a1(a2 a3 - a1 a4) - a0 a3^2
  double margin = 0.0;
  /// Largest magnitude among the three products in `margin`.
  double scale = 0.0;
};

/// Hurwitz test of a4 s^4 + ... + a0 with all a_i > 0. Stable means no root
/// in the open right half plane (margin >= 0, decided exactly).
QuarticVerdict quartic_hurwitz(double a4, double a3, double a2, double a1, double a0);

/// Frequency p of the conjugate pair +-jp, present iff the margin vanishes
/// to within rel_tol of its scale.
std::optional<double> imaginary_axis_pole(double a4, double a3, double a2, double a1,
                                          double a0, double rel_tol = 1e-9);

struct ResidueVerdict {
  bool positive_real = false;
  bool equality_holds = false;  // residue is real
  bool beta_positive = false;   // residue is positive
  /// beta = a3 b1 - a1 b3
  double beta = 0.0;
  double pole = 0.0;
  /// s b(s) / a'(s) at s = jp, for cross-checking.
  std::complex<double> residue;
};

/// Residue test for s (b3 s^3 + b2 s^2 + b1 s + b0) / (a4 s^4 + ... + a0) at
/// its imaginary pair. The residue is real iff
///   (a3 b1 - a1 b3)(a2 a3 - 2 a1 a4) = (a3 b0 - a1 b2) a3^2
/// and then positive iff a1 b3 - a3 b1 < 0.
/// Throws NoImaginaryPole when the denominator has no such pair.
ResidueVerdict residues_positive_real(double b3, double b2, double b1, double b0, double a4,
                                      double a3, double a2, double a1, double a0,
                                      double rel_tol = 1e-9);

/// Root census of a real polynomial relative to the imaginary axis.
struct RootLocation {
  int left = 0;
  int right = 0;
  /// Roots on the imaginary axis, with multiplicity.
  int imaginary = 0;
  /// Distinct w >= 0 with p(jw) = 0.
  std::vector<double> imaginary_frequencies;
  bool imaginary_simple = true;
};

/// Exact count via Cauchy indices of the real and imaginary parts of p(jw).
RootLocation locate_roots(const ExactPolynomial& p);

struct PositiveRealOptions {
  /// Grid for the reported margin min Re Z(jw).
  double omega_min = 1e-4;
  double omega_max = 1e7;
  int points = 2000;
  /// Relative tolerance on residues being real.
  double residue_tol = 1e-6;
};

struct PositiveRealVerdict {
  bool stable = false;
  std::vector<double> imaginary_axis_poles;
  bool residues_ok = false;
  bool real_part_nonneg = false;
  std::optional<double> witness_frequency;
  double margin = 0.0;

  bool passive() const { return stable && residues_ok && real_part_nonneg; }
};

PositiveRealVerdict positive_real(const ExactRationalFunction& z,
                                  const PositiveRealOptions& opt = {});
PositiveRealVerdict positive_real(const RationalFunction& z,
                                  const PositiveRealOptions& opt = {});

/// n log-spaced frequencies covering [lo, hi].
std::vector<double> log_grid(double lo, double hi, int n);

}  // namespace sdea
