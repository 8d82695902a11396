#include "sdea/grid.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <string>

namespace sdea {

namespace {

using cd = std::complex<double>;

struct Point {
  double value;
  double scale;
};

Point determinant_point(const HybridMatrix& h, double w) {
  const cd s(0.0, w);
  const cd h11 = h.h11(s), h12 = h.h12(s), h21 = h.h21(s), h22 = h.h22(s);
  const double off = std::norm((std::conj(h12) + h21) / 2.0);
  return {h11.real() * h22.real() - off, std::abs(h11) * std::abs(h22) + off};
}

Point llewellyn_point(const HybridMatrix& h, double w) {
  const cd s(0.0, w);
  const cd h11 = h.h11(s), h22 = h.h22(s), p = h.h12(s) * h.h21(s);
  return {2.0 * h11.real() * h22.real() - p.real() - std::abs(p), std::abs(p)};
}

Point real_part_point(const RationalFunction& z, double w) {
  const cd v = z.at_jw(w);
  return {v.real(), std::abs(v)};
}

template <class F>
GridMargin serial_fill(const std::vector<double>& omega, F&& f) {
  GridMargin g;
  const std::size_t n = omega.size();
  g.value.resize(n);
  g.scale.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    const Point p = f(omega[i]);
    g.value[i] = p.value;
    g.scale[i] = p.scale;
  }
  return g;
}

template <class F>
GridMargin parallel_fill(const std::vector<double>& omega, F&& f) {
  GridMargin g;
  const long n = static_cast<long>(omega.size());
  g.value.resize(omega.size());
  g.scale.resize(omega.size());
#pragma omp parallel for schedule(static)
  for (long i = 0; i < n; ++i) {
    const Point p = f(omega[static_cast<std::size_t>(i)]);
    g.value[static_cast<std::size_t>(i)] = p.value;
    g.scale[static_cast<std::size_t>(i)] = p.scale;
  }
  return g;
}

// Sequential reduction in grid order keeps argmin deterministic.
void reduce(GridMargin& g, const std::vector<double>& omega) {
  g.min_relative = std::numeric_limits<double>::infinity();
  g.argmin = omega.empty() ? 0.0 : omega.front();
  for (std::size_t i = 0; i < omega.size(); ++i) {
    if (!std::isfinite(g.value[i]) || !std::isfinite(g.scale[i]))
      throw Error(ErrorCode::kPoleAtFrequency, "pole at w = " + std::to_string(omega[i]));
    const double r = g.scale[i] > 0.0 ? g.value[i] / g.scale[i] : g.value[i];
    if (r < g.min_relative) {
      g.min_relative = r;
      g.argmin = omega[i];
    }
  }
}

template <class F>
GridMargin run(const std::vector<double>& omega, Exec exec, F&& f) {
  GridMargin g = exec == Exec::kSerial ? serial_fill(omega, f) : parallel_fill(omega, f);
  reduce(g, omega);
  return g;
}

}  // namespace

GridMargin determinant_margin(const HybridMatrix& h, const std::vector<double>& omega, Exec exec) {
  return run(omega, exec, [&](double w) { return determinant_point(h, w); });
}

GridMargin llewellyn_margin(const HybridMatrix& h, const std::vector<double>& omega, Exec exec) {
  return run(omega, exec, [&](double w) { return llewellyn_point(h, w); });
}

GridMargin real_part_margin(const RationalFunction& z, const std::vector<double>& omega,
                            Exec exec) {
  return run(omega, exec, [&](double w) { return real_part_point(z, w); });
}

std::vector<BodePoint> bode(const RationalFunction& z, const std::vector<double>& omega,
                            Exec exec) {
  std::vector<cd> v(omega.size());
  const long n = static_cast<long>(omega.size());
  if (exec == Exec::kSerial) {
    for (long i = 0; i < n; ++i) v[static_cast<std::size_t>(i)] = z.at_jw(omega[static_cast<std::size_t>(i)]);
  } else {
#pragma omp parallel for schedule(static)
    for (long i = 0; i < n; ++i) v[static_cast<std::size_t>(i)] = z.at_jw(omega[static_cast<std::size_t>(i)]);
  }
  std::vector<BodePoint> out(omega.size());
  double prev = 0.0;
  double offset = 0.0;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (!std::isfinite(v[i].real()) || !std::isfinite(v[i].imag()))
      throw Error(ErrorCode::kPoleAtFrequency, "pole at w = " + std::to_string(omega[i]));
    const double mag = std::abs(v[i]);
    const double raw = std::arg(v[i]) * 180.0 / std::numbers::pi;
    if (i > 0) {
      while (raw + offset - prev > 180.0) offset -= 360.0;
      while (raw + offset - prev < -180.0) offset += 360.0;
    }
    prev = raw + offset;
    out[i] = {omega[i], mag > 0.0 ? 20.0 * std::log10(mag) : -400.0, prev};
  }
  return out;
}

}  // namespace sdea
