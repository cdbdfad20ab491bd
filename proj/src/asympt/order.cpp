#include "cropped/asympt/order.hpp"

#include <array>
#include <cmath>

#include <boost/math/special_functions/expint.hpp>

#include "cropped/arith/sieve.hpp"
#include "cropped/error.hpp"

namespace cropped {

namespace {

// Mean of p * l_p(1) over all primes in (T/2, T]; absent primes count as 0.
double tail_weight(std::span<const LocalFactor> factors, std::uint64_t T) {
  const auto all = sieve_primes(T).primes();
  std::size_t count = 0;
  for (auto p : all)
    if (2 * p > T) ++count;
  if (count < 2) return 0;
  std::vector<double> x;
  for (const auto& f : factors) {
    if (f.p > T) break;
    if (2 * f.p <= T) continue;
    x.push_back(static_cast<double>(f.p) * local_log(f, 1.0).real());
  }
  double sum = 0;
  for (double v : x) sum += v;
  const double n = static_cast<double>(count);
  const double mean = sum / n;
  double ss = (n - static_cast<double>(x.size())) * mean * mean;
  for (double v : x) ss += (v - mean) * (v - mean);
  const double stderr_ = std::sqrt(ss / (n - 1)) / std::sqrt(n);
  return std::abs(mean) > 3 * stderr_ ? mean : 0.0;
}

// Least squares for y ~ r log d + a + b d via normal equations.
std::array<double, 3> fit(const std::vector<double>& d, const std::vector<double>& y) {
  double A[3][4] = {};
  for (std::size_t i = 0; i < d.size(); ++i) {
    const double row[3] = {std::log(d[i]), 1.0, d[i]};
    for (int j = 0; j < 3; ++j) {
      for (int k = 0; k < 3; ++k) A[j][k] += row[j] * row[k];
      A[j][3] += row[j] * y[i];
    }
  }
  for (int c = 0; c < 3; ++c) {
    int piv = c;
    for (int r = c + 1; r < 3; ++r)
      if (std::abs(A[r][c]) > std::abs(A[piv][c])) piv = r;
    for (int k = 0; k < 4; ++k) std::swap(A[c][k], A[piv][k]);
    if (A[c][c] == 0) throw ValidationError("order grid is degenerate");
    for (int r = 0; r < 3; ++r) {
      if (r == c) continue;
      const double m = A[r][c] / A[c][c];
      for (int k = c; k < 4; ++k) A[r][k] -= m * A[c][k];
    }
  }
  return {A[0][3] / A[0][0], A[1][3] / A[1][1], A[2][3] / A[2][2]};
}

}  // namespace

nlohmann::json OrderEstimate::to_json() const {
  nlohmann::json pts = nlohmann::json::array();
  for (const auto& p : points)
    pts.push_back({{"sigma", p.sigma}, {"log_product", p.log_product}, {"fitted", p.fitted}});
  nlohmann::json j = {{"r", r}, {"residual", residual}, {"tail_weight", tail_weight}, {"points", pts}};
  j["ord"] = ord ? nlohmann::json(*ord) : nlohmann::json(nullptr);
  if (ord) j["rounding_margin"] = std::abs(r - *ord);
  return j;
}

OrderEstimate order_estimate(std::span<const LocalFactor> factors, std::uint64_t T, const OrderGrid& grid) {
  if (T < 3) throw ValidationError("T must be at least 3");
  if (!(grid.delta0 > 0) || grid.K < 0) throw ValidationError("bad order grid");
  const double logT = std::log(static_cast<double>(T));
  std::vector<double> deltas;
  for (int k = 0; k <= grid.K; ++k) {
    const double d = grid.delta0 * std::ldexp(1.0, -k);
    if (d >= grid.c / logT) deltas.push_back(d);
  }
  if (deltas.size() < 3) throw ValidationError("fewer than three grid points satisfy sigma - 1 >= c / log T");

  OrderEstimate est;
  est.tail_weight = tail_weight(factors, T);
  std::vector<double> y;
  for (double d : deltas) {
    const double lp = product(factors, 1.0 + d, T).log_value.real();
    const double v = lp + est.tail_weight * boost::math::expint(1, d * logT);
    est.points.push_back({1.0 + d, lp, v});
    y.push_back(v);
  }
  bool constant = true;
  for (double v : y) constant = constant && v == y.front();
  if (constant) {
    est.r = 0;
    est.ord = 0;
    return est;
  }
  const auto [r, a, b] = fit(deltas, y);
  double ss = 0;
  for (std::size_t i = 0; i < y.size(); ++i) {
    const double e = y[i] - (r * std::log(deltas[i]) + a + b * deltas[i]);
    ss += e * e;
  }
  est.r = r;
  est.residual = std::sqrt(ss / static_cast<double>(y.size()));
  if (est.residual > grid.max_residual)
    throw InconclusiveError("order fit residual " + std::to_string(est.residual) + " above threshold");
  const double rounded = std::round(r);
  if (std::abs(r - rounded) < 0.25) est.ord = static_cast<int>(rounded);
  return est;
}

std::vector<LocalFactor> zeta_factors(std::span<const std::uint64_t> primes, double exponent) {
  std::vector<LocalFactor> out;
  out.reserve(primes.size());
  for (auto p : primes) out.push_back({p, 1, 1.0, 0.0, exponent});
  return out;
}

std::vector<LocalFactor> dedekind_crop_factors(std::span<const std::uint64_t> primes, int sign, double exponent) {
  if (sign != 1 && sign != -1) throw ValidationError("sign must be +1 or -1");
  std::vector<LocalFactor> out;
  out.reserve(primes.size());
  for (auto p : primes) out.push_back({p, 1, sign == 1 ? -1.0 : 1.0, 0.0, exponent});
  return out;
}

ProductResult dedekind_crop_product(std::span<const std::uint64_t> primes, int sign, double exponent, double sigma,
                                    std::uint64_t T) {
  const auto f = dedekind_crop_factors(primes, sign, exponent);
  return product(f, sigma, T);
}

}  // namespace cropped
