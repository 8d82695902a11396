#include "sdea/perf.hpp"

#include <cmath>
#include <complex>

namespace sdea {

namespace {

ExactRationalFunction constant(const Rational& c) { return {ExactPolynomial{c}, ExactPolynomial{1}}; }

void require_nonneg(double v, const char* name) {
  if (!std::isfinite(v) || v < 0.0)
    throw Error(ErrorCode::kInvalidParams, std::string(name) + " must be finite and non-negative");
}

}  // namespace

ExactRationalFunction EnvironmentModel::impedance() const {
  require_nonneg(Ke, "Ke");
  require_nonneg(Be, "Be");
  switch (kind) {
    case Kind::kNull: return constant(0);
    case Kind::kSpring: return canonical({ExactPolynomial{exact(Ke)}, ExactPolynomial{0, 1}});
    case Kind::kDamper: return constant(exact(Be));
    case Kind::kVoigt:
      return canonical({ExactPolynomial{exact(Ke), exact(Be)}, ExactPolynomial{0, 1}});
  }
  return constant(0);
}

ExactRationalFunction transmitted_impedance(const ExactHybridMatrix& h, const EnvironmentModel& env) {
  const auto ze = env.impedance();
  const auto den = constant(1) + h.h22 * ze;
  if (den.num.is_zero())
    throw Error(ErrorCode::kDegenerateTermination, "1 + h22 Ze vanishes identically");
  if (ze.num.is_zero()) return canonical(h.h11);
  const auto dh = h.h11 * h.h22 - h.h12 * h.h21;
  return (h.h11 + dh * ze) / den;
}

ExactRationalFunction z_min(const ExactHybridMatrix& h) { return canonical(h.h11); }

ExactRationalFunction z_width(const ExactHybridMatrix& h) {
  return constant(-1) * h.h12 * h.h21 / h.h22;
}

TransparencyLimits transparency_limits(const SystemParams& p, const VirtualCoupler& vc,
                                       double omega_low, double omega_high, double tol) {
  if (!(vc.b22 > 0.0)) throw Error(ErrorCode::kInvalidParams, "high-frequency limit needs b22 > 0");
  const auto h = hybrid_matrix(p, vc);
  TransparencyLimits t;
  t.omega_low = omega_low;
  t.omega_high = omega_high;
  auto fill = [&](double w, const Matrix2& pattern, Matrix2& out) {
    const auto v = eval_h(h, w);
    const std::complex<double> e[2][2] = {{v.h11, v.h12}, {v.h21, v.h22}};
    double err = 0.0;
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j) {
        out[i][j] = e[i][j].real();
        err = std::max(err, std::abs(e[i][j] - pattern[i][j]) / std::max(1.0, std::abs(pattern[i][j])));
      }
    return err;
  };
  t.low_error = fill(omega_low, {{{0.0, 1.0}, {-1.0, 0.0}}}, t.low_freq);
  t.high_error = fill(omega_high, {{{p.Bf, 0.0}, {-1.0, 1.0 / vc.b22}}}, t.high_freq);
  t.low_converged = t.low_error <= tol;
  t.high_converged = t.high_error <= tol;
  return t;
}

double spring_reference(double k22, double Kd) {
  if (!(Kd >= 0.0)) throw Error(ErrorCode::kInvalidParams, "Kd must be non-negative");
  if (Kd >= k22) throw Error(ErrorCode::kDesiredExceedsCoupler, "Kd must stay below k22");
  return k22 * Kd / (k22 - Kd);
}

double voigt_reference(double b22, double Bd) {
  if (!(Bd >= 0.0)) throw Error(ErrorCode::kInvalidParams, "Bd must be non-negative");
  if (Bd >= b22) throw Error(ErrorCode::kDesiredExceedsCoupler, "Bd must stay below b22");
  return b22 * Bd / (b22 - Bd);
}

std::vector<BodePoint> frequency_response(const RationalFunction& z, const std::vector<double>& omega,
                                          Exec exec) {
  return bode(z, omega, exec);
}

}  // namespace sdea
