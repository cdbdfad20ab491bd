#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "cropped/euler/euler.hpp"
#include "json.hpp"

namespace cropped {

// sigma_k = 1 + delta0 2^-k, k = 0..K; points with sigma_k - 1 < c / log T are dropped.
struct OrderGrid {
  double delta0 = 0.1;
  int K = 6;
  double c = 0.02;
  double max_residual = 0.05;  // rms of the fit, in log units
};

struct OrderPoint {
  double sigma;
  double log_product;  // truncated, before tail compensation
  double fitted;       // compensated value used in the fit
};

struct OrderEstimate {
  double r = 0;  // order at s = 1: -1 for a simple pole
  double residual = 0;
  double tail_weight = 0;  // c in the tail model c * E1((sigma - 1) log T)
  std::vector<OrderPoint> points;
  std::optional<int> ord;  // r rounded when within 0.25 of an integer
  nlohmann::json to_json() const;
};

// Fits log prod_{p <= T}(sigma) + c E1((sigma-1) log T) = r log(sigma-1) + a + b (sigma-1).
// Throws InconclusiveError when the rms residual exceeds grid.max_residual.
OrderEstimate order_estimate(std::span<const LocalFactor> factors, std::uint64_t T,
                             const OrderGrid& grid = {});

// (1 - p^-s)^-exponent.
std::vector<LocalFactor> zeta_factors(std::span<const std::uint64_t> primes, double exponent = 1);
// G+ = prod (1 + p^-s)^-exponent, G- = prod (1 - p^-s)^-exponent; sign = +1 or -1.
std::vector<LocalFactor> dedekind_crop_factors(std::span<const std::uint64_t> primes, int sign,
                                               double exponent);
// Empty prime set gives the constant 1.
ProductResult dedekind_crop_product(std::span<const std::uint64_t> primes, int sign, double exponent,
                                    double sigma, std::uint64_t T);

}  // namespace cropped
