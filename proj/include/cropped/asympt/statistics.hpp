#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "cropped/asympt/measure.hpp"
#include "cropped/coeffs/newform.hpp"
#include "json.hpp"

namespace cropped {

struct EmpiricalDistribution {
  std::vector<double> values;  // sorted
  std::string tag;

  EmpiricalDistribution() = default;
  EmpiricalDistribution(std::vector<double> v, std::string tag);
  std::size_t size() const { return values.size(); }
  double mean() const;
  // Rows x, empirical CDF, model CDF at each distinct sample value.
  std::string to_csv(const Measure& m) const;
};

// Two-sided sup |F_n - F| over the sample jump points (ties handled).
double ks_distance(std::span<const double> sorted_samples, const Measure& m);
inline double ks_distance(const EmpiricalDistribution& e, const Measure& m) {
  return ks_distance(e.values, m);
}

// CM angle samples. Per-prime mode keeps, for every split p <= t with
// d(p) = n, the ideal above p with arg psi(P)^n in (0, pi); those angles
// are compared with uniform_angle(pi) and their cosines, which equal
// b_p / (2 p^{n/2}), with cm_arcsine. Ideal mode keeps both ideals with
// arg psi(P) in [0, 2 pi) for sector counts.
struct CmAngleSamples {
  EmpiricalDistribution angles;
  EmpiricalDistribution cosines;
};
enum class AngleMode { per_prime, per_ideal };
CmAngleSamples cm_angle_samples(const HeckeCharacterSource& src, std::uint64_t t, int n = 1,
                                AngleMode mode = AngleMode::per_prime,
                                const std::function<bool(const QuadInt&)>& class_filter = {});
// Fraction of angles (in [0, 2 pi)) that are <= theta.
double sector_fraction(const EmpiricalDistribution& angles, double theta);
// True for alpha in the class of rep in I(n)/P_1(n), i.e. alpha = u rep mod n.
std::function<bool(const QuadInt&)> ray_class_filter(const ImagQuadField& K, QuadInt n, QuadInt rep);

// a_p / (2 sqrt(p) zeta) over good p <= t, p = m mod M. Requires zeta^2 = eps(p)
// for every such p.
EmpiricalDistribution sato_tate_progression_samples(const Newform& f, std::int64_t M,
                                                    std::int64_t m, const RootOfUnity& zeta,
                                                    std::uint64_t t, int embedding = 0);

// b_p / (2p) with b_p = a_p^2 - 2 p eps(p) over S2+ and S2-.
struct S2Samples {
  EmpiricalDistribution plus, minus;
  std::vector<std::uint64_t> plus_primes, minus_primes;
  std::vector<double> plus_b, minus_b;  // b_p, same order as the primes
};
S2Samples s2_b_samples(const Newform& f, const PrimePartition& part, std::uint64_t t,
                       int embedding = 0);

enum class Verdict { converges, diverges, inconclusive };
const char* to_string(Verdict v);

struct SeriesPoint {
  std::uint64_t t;
  double value;
};

// Classifies a sequence of decade checkpoints by the decay of successive
// increments: geometric decay (>= 10^-0.5 per decade) converges, flat
// increments of size >= 1e-3 diverge.
Verdict classify_increments(std::span<const SeriesPoint> points);

std::vector<std::uint64_t> decade_checkpoints(std::uint64_t first, std::uint64_t t);

struct ExpectationReport {
  std::vector<SeriesPoint> running;  // E(nu_n) at decades
  double limit = 0;                  // fitted l (final running mean)
  Verdict verdict = Verdict::inconclusive;
};
// Running means of c_i / p_i.
ExpectationReport expectation_sequence(std::span<const std::uint64_t> primes,
                                       std::span<const double> c, std::uint64_t t);

// K(t) = (1/|S(t)|) sum c_n / p_n - l at the decade checkpoints.
std::vector<SeriesPoint> k_function(std::span<const std::uint64_t> primes, std::span<const double> c,
                                    double ell, std::uint64_t t);
struct KIntegral {
  double value = 0;                  // integral from p_1 to t_max
  std::vector<SeriesPoint> running;  // at decades
  Verdict verdict = Verdict::inconclusive;
};
// K is a step function, so the integral is summed exactly:
// sum |K| (log log b - log log a) over consecutive prime gaps.
KIntegral k_integral(std::span<const std::uint64_t> primes, std::span<const double> c, double ell,
                     std::uint64_t t_max);

struct TailReport {
  std::vector<SeriesPoint> log_product, series;
  double max_discrepancy = 0;  // max |log prod - series|
  double discrepancy_bound = 0;  // sum c^2/p^4 bound
  double k = 0;                // fitted max |c|/p
  Verdict product_verdict = Verdict::inconclusive, series_verdict = Verdict::inconclusive;
  bool consistent() const { return product_verdict == series_verdict; }
};
TailReport tail_verdict(std::span<const std::uint64_t> primes, std::span<const double> c,
                              std::uint64_t t);

// sum c/p^2 against (1/t) sum c/p + int_{p_1}^t x^-2 sum_{p<=x} c/p dx.
struct PartialSummation {
  double lhs = 0, rhs = 0;
  double relative_error() const;
};
PartialSummation partial_summation_check(std::span<const std::uint64_t> primes,
                                         std::span<const double> c, double t);

// Running sum over good p = m mod M of (a_p^2 - p eps(p)) / p^2 (roots
// normalized by sqrt p). drift: monotone across the last three decade
// increments with total change above 0.05.
struct Sym2Report {
  std::vector<SeriesPoint> running;
  bool drift = false;
};
Sym2Report sym2_partial_sum(const Newform& f, std::int64_t M, std::int64_t m,
                            std::span<const std::uint64_t> checkpoints, int embedding = 0);

nlohmann::json to_json(const std::vector<SeriesPoint>& pts);

}  // namespace cropped
