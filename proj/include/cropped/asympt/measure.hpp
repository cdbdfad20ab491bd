#pragma once

#include <string>

namespace cropped {

enum class MeasureKind { sato_tate, cm_arcsine, mu_plus, mu_minus, uniform_angle };

const char* to_string(MeasureKind k);
MeasureKind measure_kind_from_string(const std::string& s);

// Limit laws on [-1, 1]; uniform_angle lives on [0, hi) with hi = 2 pi for
// sector counts and pi for the one-angle-per-prime convention.
struct Measure {
  MeasureKind kind = MeasureKind::sato_tate;
  double hi = 0;  // uniform_angle only

  static Measure sato_tate() { return {MeasureKind::sato_tate}; }
  static Measure cm_arcsine() { return {MeasureKind::cm_arcsine}; }
  static Measure mu_plus() { return {MeasureKind::mu_plus}; }
  static Measure mu_minus() { return {MeasureKind::mu_minus}; }
  static Measure uniform_angle(double hi);

  double lo() const;
  double upper() const;
  double density(double x) const;
  // Closed form. Arguments outside the support are clamped (with a note on
  // std::clog).
  double cdf(double x) const;
  // Same value by tanh-sinh quadrature of the density, abs. tolerance 1e-10.
  double cdf_quadrature(double x) const;
  double quantile(double u) const;
  double mean() const;
  std::string describe() const;

 private:
  template <class W>
  double integrate(double a, double b, W w, double* err) const;
};

inline double measure_cdf(const Measure& m, double x) { return m.cdf(x); }

}  // namespace cropped
