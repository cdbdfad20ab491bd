#pragma once

#include <gmpxx.h>

#include <complex>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "cropped/arith/root_of_unity.hpp"
#include "cropped/coeffs/newform.hpp"
#include "cropped/error.hpp"
#include "cropped/euler/qsqrt.hpp"
#include "cropped/splitting/partition.hpp"

namespace cropped {

// plus: 1 - a p^-s + eps p^{1-2s}; minus flips the sign of a.
enum class Twist { plus, minus };

class FactorVanishesError : public ValidationError {
 public:
  explicit FactorVanishesError(std::uint64_t p)
      : ValidationError("Euler factor vanishes at p=" + std::to_string(p)), prime(p) {}
  std::uint64_t prime;
};

// alpha^d + (conj(alpha) eps)^d via t_k = a t_{k-1} - p eps t_{k-2}.
mpz_class bp_power_trace(const mpz_class& a, int eps_sign, std::uint64_t p, int d);
std::complex<double> bp_power_trace(std::complex<double> a, const RootOfUnity& eps,
                                    std::uint64_t p, int d);

// 1 / (1 -+ a p^-s + eps p^{1-2s}); sigma > 1/2.
std::complex<double> euler_factor(std::uint64_t p, std::complex<double> a, const RootOfUnity& eps,
                                  double sigma, Twist twist = Twist::plus);
// Exact in Q(sqrt p) for s in (1/2)Z, eps = +-1.
QSqrt euler_factor_exact(std::uint64_t p, std::int64_t a, int eps_sign, const mpq_class& s,
                         Twist twist = Twist::plus);

// (1 - a X + eps p X^2)(1 + a X + eps p X^2) == 1 - b X^2 + p^2 X^4 at X = p^-s,
// b = a^2 - 2 p eps, exactly. Needs eps^2 = 1.
bool factorization_identity_check(std::uint64_t p, std::int64_t a, const RootOfUnity& eps,
                                  const mpq_class& s);

// (1 - B p^{-d s} + E p^{d(1-2s)})^{-exponent}
struct LocalFactor {
  std::uint64_t p;
  int d = 1;
  std::complex<double> B;
  std::complex<double> E;
  double exponent = 1;
};

std::complex<double> local_log(const LocalFactor& f, double sigma);

struct Checkpoint {
  std::uint64_t T;
  double sigma;
  std::complex<double> value;
  std::complex<double> log_value;
};

struct ProductResult {
  double sigma = 0;
  std::uint64_t T = 0;
  std::size_t factors = 0;
  std::complex<double> value = 1;
  std::complex<double> log_value = 0;
  std::vector<Checkpoint> checkpoints;  // p <= 10^k, then T
  // Bound on |log(full product) - log_value| when sigma > 3/2.
  std::optional<double> tail_log_bound;

  // Columns T,sigma,value,log_value (real parts).
  std::string to_csv() const;
};

// Ordered product over the factors with p <= T (factors ascending in p).
ProductResult product(std::span<const LocalFactor> factors, double sigma, std::uint64_t T);

struct PartialProductSpec {
  std::vector<std::uint64_t> primes;  // the subset S
  Twist twist = Twist::plus;
  double exponent = 1;
  double sigma = 2;
  std::uint64_t T = 0;
  int embedding = 0;
};

std::vector<LocalFactor> degree_one_factors(const Newform& f, std::span<const std::uint64_t> primes,
                                            std::uint64_t T, Twist twist, double exponent,
                                            int embedding = 0);
ProductResult partial_product(const PartialProductSpec& spec, const Newform& f);

// Factors of L*(f/L, s): exponent [L:Q]/d(p), B = b_p, E = eps(p)^d(p) = 1.
// Throws ValidationError if eps(p)^d(p) != 1 (wrong splitting field).
std::vector<LocalFactor> field_factors(const Newform& f, const PrimePartition& part, std::uint64_t T,
                                       int embedding = 0);
ProductResult crop_L_over_field(const Newform& f, const PrimePartition& part, double sigma,
                                std::uint64_t T, int embedding = 0);

struct GDecomposition {
  ProductResult g1, g2, g3;
  std::complex<double> product() const { return g1.value * g2.value * g3.value; }
};
GDecomposition g_decomposition(const Newform& f, const PrimePartition& part, double sigma,
                               std::uint64_t T, int embedding = 0);

// Exact rational versions at integer s; need rational a_p and eps(p) = +-1.
struct ExactG {
  mpq_class g1 = 1, g2 = 1, g3 = 1;
};
mpq_class crop_L_over_field_exact(const Newform& f, const PrimePartition& part, long s,
                                  std::uint64_t T);
ExactG g_decomposition_exact(const Newform& f, const PrimePartition& part, long s, std::uint64_t T);

// Rigorous |log tail| bound over p > T for a product of degree-d factors
// with |roots| <= sqrt(p)^d, sigma > 3/2.
double tail_log_bound(double sigma, std::uint64_t T, double exponent);

}  // namespace cropped
