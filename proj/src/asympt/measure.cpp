#include "cropped/asympt/measure.hpp"

#include <boost/math/quadrature/tanh_sinh.hpp>
#include <algorithm>
#include <cmath>
#include <iostream>
#include <numbers>

#include "cropped/error.hpp"

namespace cropped {

namespace {

constexpr double kPi = std::numbers::pi;

// mu_ST([-u, u])
double st_symmetric(double u) { return (2.0 / kPi) * (std::asin(u) + u * std::sqrt(std::max(0.0, 1 - u * u))); }

}  // namespace

// int_a^b w(t) density(t) dt. tanh-sinh hands over the distance to the nearer
// endpoint, which keeps 1 + t and 1 - t accurate next to the singular ends.
template <class W>
double Measure::integrate(double a, double b, W w, double* err) const {
  boost::math::quadrature::tanh_sinh<double> integrator;
  auto f = [&](double t, double tc) {
    const bool near_a = t < 0.5 * (a + b);
    const double plus = near_a ? (1 + a) - tc : (1 + b) - tc;  // 1 + t
    const double minus = near_a ? (1 - a) + tc : (1 - b) + tc;  // 1 - t
    double d = 0;
    switch (kind) {
      case MeasureKind::sato_tate: d = (2.0 / kPi) * std::sqrt(plus * minus); break;
      case MeasureKind::cm_arcsine: d = 1.0 / (kPi * std::sqrt(plus * minus)); break;
      case MeasureKind::mu_plus: d = std::sqrt(minus / plus) / kPi; break;
      case MeasureKind::mu_minus: d = std::sqrt(plus / minus) / kPi; break;
      case MeasureKind::uniform_angle: d = 1.0 / hi; break;
    }
    return w(t) * d;
  };
  return integrator.integrate(f, a, b, 1e-12, err);
}

const char* to_string(MeasureKind k) {
  switch (k) {
    case MeasureKind::sato_tate: return "sato_tate";
    case MeasureKind::cm_arcsine: return "cm_arcsine";
    case MeasureKind::mu_plus: return "mu_plus";
    case MeasureKind::mu_minus: return "mu_minus";
    case MeasureKind::uniform_angle: return "uniform_angle";
  }
  return "?";
}

MeasureKind measure_kind_from_string(const std::string& s) {
  for (auto k : {MeasureKind::sato_tate, MeasureKind::cm_arcsine, MeasureKind::mu_plus,
                 MeasureKind::mu_minus, MeasureKind::uniform_angle})
    if (s == to_string(k)) return k;
  throw ValidationError("unknown measure '" + s + "'");
}

Measure Measure::uniform_angle(double hi) {
  if (!(hi > 0)) throw ValidationError("uniform_angle needs a positive length");
  return {MeasureKind::uniform_angle, hi};
}

double Measure::lo() const { return kind == MeasureKind::uniform_angle ? 0.0 : -1.0; }
double Measure::upper() const { return kind == MeasureKind::uniform_angle ? hi : 1.0; }

double Measure::density(double x) const {
  if (x < lo() || x > upper()) return 0;
  switch (kind) {
    case MeasureKind::sato_tate: return (2.0 / kPi) * std::sqrt(1 - x * x);
    case MeasureKind::cm_arcsine: return 1.0 / (kPi * std::sqrt(1 - x * x));
    case MeasureKind::mu_plus: return std::sqrt((1 - x) / (1 + x)) / kPi;
    case MeasureKind::mu_minus: return std::sqrt((1 + x) / (1 - x)) / kPi;
    case MeasureKind::uniform_angle: return 1.0 / hi;
  }
  return 0;
}

double Measure::cdf(double x) const {
  if (x < lo() || x > upper()) {
    static bool noted = false;
    if (!noted && std::isfinite(x) && std::abs(x - std::clamp(x, lo(), upper())) > 1e-9) {
      std::clog << "note: " << describe() << " CDF argument " << x << " clamped to support\n";
      noted = true;
    }
    x = std::clamp(x, lo(), upper());
  }
  switch (kind) {
    case MeasureKind::sato_tate: return 0.5 + (std::asin(x) + x * std::sqrt(1 - x * x)) / kPi;
    case MeasureKind::cm_arcsine: return 0.5 + std::asin(x) / kPi;
    case MeasureKind::mu_plus: return st_symmetric(std::sqrt((x + 1) / 2));
    case MeasureKind::mu_minus: return 1 - st_symmetric(std::sqrt((1 - x) / 2));
    case MeasureKind::uniform_angle: return x / hi;
  }
  return 0;
}

double Measure::cdf_quadrature(double x) const {
  x = std::clamp(x, lo(), upper());
  if (x == lo()) return 0;
  double err = 0;
  const double v = integrate(lo(), x, [](double) { return 1.0; }, &err);
  if (err > 1e-10) throw InconclusiveError("CDF quadrature did not reach 1e-10");
  return v;
}

double Measure::quantile(double u) const {
  if (u <= 0) return lo();
  if (u >= 1) return upper();
  double a = lo(), b = upper();
  for (int i = 0; i < 200 && b - a > 1e-15 * std::max(1.0, std::abs(b)); ++i) {
    const double m = 0.5 * (a + b);
    (cdf(m) < u ? a : b) = m;
  }
  return 0.5 * (a + b);
}

double Measure::mean() const {
  return integrate(lo(), upper(), [](double t) { return t; }, nullptr);
}

std::string Measure::describe() const {
  std::string s = to_string(kind);
  if (kind == MeasureKind::uniform_angle) s += "[0," + std::to_string(hi) + ")";
  return s;
}

}  // namespace cropped
