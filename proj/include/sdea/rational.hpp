#pragma once

#include <gmpxx.h>

#include <cmath>
#include <stdexcept>

namespace sdea {

using Rational = mpq_class;

/// Exact binary expansion of a finite double.
inline Rational exact(double v) {
  if (!std::isfinite(v)) throw std::domain_error("exact(): non-finite value");
  return Rational(v);
}

inline double to_double(const Rational& q) { return q.get_d(); }
inline double to_double(double v) { return v; }

inline int sign(const Rational& q) { return sgn(q); }
inline int sign(double v) { return (v > 0.0) - (v < 0.0); }

}  // namespace sdea
