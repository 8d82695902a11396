#include "sdea/model.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace sdea {

namespace {

template <class T>
T as(double v) {
  if constexpr (std::is_same_v<T, Rational>)
    return exact(v);
  else
    return v;
}

void require(bool ok, const std::string& what) {
  if (!ok) throw Error(ErrorCode::kInvalidParams, what);
}

ExactPolynomial drop_s(const ExactPolynomial& p) { return p.shift_down(1); }

}  // namespace

void SystemParams::validate() const {
  for (double v : {Kf, Bf, M, B, Pm, Im, Pf, If, alpha})
    require(std::isfinite(v), "parameters must be finite");
  require(Kf > 0 && M > 0 && B > 0 && Pm > 0 && Pf > 0, "Kf, M, B, Pm, Pf must be positive");
  require(Bf >= 0 && Im >= 0 && If >= 0, "Bf, Im, If must be non-negative");
  require(alpha >= 0 && alpha <= 1, "alpha must lie in [0, 1]");
}

SystemParams SystemParams::table1() {
  return {362.0, 0.05, 6.399e-4, 0.169, 0.28, 100.0, 40.0, 70.0, 1.0};
}

void VirtualCoupler::validate() const {
  require(std::isfinite(k22) && std::isfinite(b22), "coupler must be finite");
  require(k22 >= 0 && b22 >= 0, "k22 and b22 must be non-negative");
}

template <class T>
DerivedCoefficients<T> derive(const SystemParams& p, const VirtualCoupler& vc) {
  p.validate();
  vc.validate();
  const T Kf = as<T>(p.Kf), Bf = as<T>(p.Bf), M = as<T>(p.M), B = as<T>(p.B),
          Pm = as<T>(p.Pm), Im = as<T>(p.Im), Pf = as<T>(p.Pf), If = as<T>(p.If),
          al = as<T>(p.alpha), k22 = as<T>(vc.k22), b22 = as<T>(vc.b22);
  DerivedCoefficients<T> d;
  d.mu = Im / Pm;
  d.nu = If / Pf;
  const T mn = d.mu + d.nu;
  d.a4 = M;
  d.a3 = B + Pm + Bf * (al + Pm * Pf);
  d.a2 = Im + Kf * (al + Pm * Pf) + Bf * Pm * Pf * mn;
  d.a1 = Bf * Im * If + Kf * Pm * Pf * mn;
  d.a0 = Kf * Im * If;

  d.b3 = Bf * M;
  d.b2 = Bf * (B + Pm) + Kf * M;
  d.b1 = Bf * Im + Kf * (B + Pm);
  d.b0 = Kf * Im;

  d.n3 = Bf * Pm * Pf;
  d.n2 = Pm * Pf * (Kf + Bf * mn);
  d.n1 = d.a1;
  d.n0 = d.a0;

  d.e4 = M;
  d.e3 = B + Pm + al * Bf;
  d.e2 = Im + al * Kf;

  d.kappa1 = Pf * Im - B * If;
  d.kappa2 = B + Pm - M * mn;
  d.kappa3 = al * (B + Pm) + Pm * Pf * d.kappa2;
  d.tau1 = 4 * Bf - b22;
  d.tau2 = 2 * M * d.e2 - d.e3 * d.e3;

  d.r3 = Bf * M * M;
  d.r2 = Bf * ((B + Pm) * (B + Pm) + Bf * d.kappa3 - 2 * Im * M);
  d.r1 = Kf * Kf * d.kappa3 + Bf * Im * Im + Bf * Bf * Im * d.kappa1;
  d.r0 = Im * Kf * Kf * d.kappa1;

  d.t3 = d.tau1 * b22 * M * M;
  d.t2 = 4 * b22 * d.r2 + b22 * b22 * d.tau2 - k22 * k22 * M * M;
  d.t1 = 4 * b22 * d.r1 + k22 * k22 * d.tau2 - b22 * b22 * d.e2 * d.e2;
  d.t0 = 4 * b22 * d.r0 - k22 * k22 * d.e2 * d.e2;
  return d;
}

template DerivedCoefficients<double> derive(const SystemParams&, const VirtualCoupler&);
template DerivedCoefficients<Rational> derive(const SystemParams&, const VirtualCoupler&);

ExactHybridMatrix hybrid_matrix_exact(const SystemParams& p, const VirtualCoupler& vc) {
  const auto d = derive<Rational>(p, vc);
  if (vc.k22 == 0.0 && vc.b22 == 0.0)
    throw Error(ErrorCode::kInvalidParams, "coupler needs k22 > 0 or b22 > 0");
  ExactPolynomial den{d.a0, d.a1, d.a2, d.a3, d.a4};
  ExactPolynomial n11{0, d.b0, d.b1, d.b2, d.b3};
  ExactPolynomial n12{d.n0, d.n1, d.n2, d.n3};
  while (sign(den.coeff(0)) == 0 && sign(n11.coeff(0)) == 0 && sign(n12.coeff(0)) == 0) {
    den = drop_s(den);
    n11 = drop_s(n11);
    n12 = drop_s(n12);
  }
  ExactHybridMatrix h;
  h.h11 = {n11, den};
  h.h12 = {n12, den};
  h.h21 = {ExactPolynomial{-1}, ExactPolynomial{1}};
  h.h22 = {ExactPolynomial{0, 1}, ExactPolynomial{exact(vc.k22), exact(vc.b22)}};
  return h;
}

HybridMatrix hybrid_matrix(const SystemParams& p, const VirtualCoupler& vc) {
  const auto e = hybrid_matrix_exact(p, vc);
  return {to_double(e.h11), to_double(e.h12), to_double(e.h21), to_double(e.h22)};
}

namespace {

std::complex<double> eval_checked(const RationalFunction& f, double omega) {
  const std::complex<double> s(0.0, omega);
  const auto den = f.den.eval(s);
  double scale = 0.0, wk = 1.0;
  for (double c : f.den.coeffs()) {
    scale += std::abs(c) * wk;
    wk *= omega;
  }
  if (std::abs(den) <= 1e-14 * scale)
    throw Error(ErrorCode::kPoleAtFrequency, "denominator vanishes at w = " + std::to_string(omega));
  return f.num.eval(s) / den;
}

}  // namespace

HValues eval_h(const HybridMatrix& h, double omega) {
  return {eval_checked(h.h11, omega), eval_checked(h.h12, omega), eval_checked(h.h21, omega),
          eval_checked(h.h22, omega)};
}

Config parse_config(const std::string& json_text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(json_text);
  } catch (const nlohmann::json::parse_error& e) {
    throw Error(ErrorCode::kConfig, std::string("malformed JSON: ") + e.what());
  }
  if (!j.is_object()) throw Error(ErrorCode::kConfig, "top level must be an object");
  static const char* kKnown[] = {"Kf", "Bf", "J", "B", "Pm", "Im", "Pf", "If", "alpha", "k22", "b22"};
  for (const auto& [key, value] : j.items()) {
    if (std::find(std::begin(kKnown), std::end(kKnown), key) == std::end(kKnown))
      throw Error(ErrorCode::kConfig, "unknown key '" + key + "'");
    if (!value.is_number()) throw Error(ErrorCode::kConfig, "key '" + key + "' must be a number");
  }
  auto get = [&](const char* key) {
    if (!j.contains(key)) throw Error(ErrorCode::kConfig, std::string("missing key '") + key + "'");
    return j.at(key).get<double>();
  };
  Config c;
  auto& p = c.params;
  p.Kf = get("Kf");
  p.Bf = get("Bf");
  p.M = get("J");
  p.B = get("B");
  p.Pm = get("Pm");
  p.Im = get("Im");
  p.Pf = get("Pf");
  p.If = get("If");
  p.alpha = j.contains("alpha") ? get("alpha") : 1.0;
  if (j.contains("k22") != j.contains("b22"))
    throw Error(ErrorCode::kConfig, "k22 and b22 must be given together");
  if (j.contains("k22")) c.vc = VirtualCoupler{get("k22"), get("b22")};
  try {
    p.validate();
    if (c.vc) c.vc->validate();
  } catch (const Error& e) {
    throw Error(ErrorCode::kConfig, e.what());
  }
  return c;
}

Config load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kConfig, "cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str());
}

}  // namespace sdea
