// Acceptance run: one line per criterion, non-zero exit if any fails.
#include <chrono>
#include <cmath>
#include <complex>
#include <cstdio>
#include <functional>
#include <map>
#include <random>
#include <sstream>
#include <string>

#include "cropped/arith/sieve.hpp"
#include "cropped/asympt/measure.hpp"
#include "cropped/asympt/order.hpp"
#include "cropped/asympt/statistics.hpp"
#include "cropped/coeffs/hecke.hpp"
#include "cropped/coeffs/newform.hpp"
#include "cropped/error.hpp"
#include "cropped/euler/euler.hpp"
#include "cropped/relations/relations.hpp"
#include "orbit_fixtures.hpp"

using namespace cropped;

namespace {

constexpr double pi = 3.14159265358979323846;

struct Outcome {
  bool pass = true;
  std::ostringstream detail;
  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      detail << " [failed: " << what << "]";
    }
  }
};

int failures = 0;

void criterion(int id, const char* title, double budget_s, const std::function<void(Outcome&)>& body) {
  Outcome o;
  const auto t0 = std::chrono::steady_clock::now();
  try {
    body(o);
  } catch (const std::exception& e) {
    o.pass = false;
    o.detail << " [exception: " << e.what() << "]";
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  o.require(secs < budget_s, "runtime budget " + std::to_string(budget_s) + " s");
  if (!o.pass) ++failures;
  std::printf("criterion %d %s: %s (%.2f s) %s\n", id, title, o.pass ? "PASS" : "FAIL", secs, o.detail.str().c_str());
  std::fflush(stdout);
}

std::complex<double> root_power(double a, double eps, double p, int d) {
  const auto disc = std::sqrt(std::complex<double>(a * a - 4 * p * eps));
  return std::pow((a + disc) / 2.0, d) + std::pow((a - disc) / 2.0, d);
}

PrimePartition gaussian_partition(std::uint64_t bound) {
  const DirichletCharacter twists[] = {DirichletCharacter::kronecker(-4)};
  const auto one = DirichletCharacter::trivial(4);
  return partition_primes(field_from_inner_twists(4, one, twists), one, bound);
}

}  // namespace

int main() {
  criterion(1, "exact identities", 1.0, [](Outcome& o) {
    std::mt19937_64 rng(20261016);
    const auto primes = sieve_primes(10000).primes();
    int checked = 0;
    for (int i = 0; i < 1000; ++i) {
      const auto p = primes[rng() % primes.size()];
      const auto bound = static_cast<std::int64_t>(std::floor(2 * std::sqrt(static_cast<double>(p))));
      const std::int64_t a = static_cast<std::int64_t>(rng() % static_cast<std::uint64_t>(2 * bound + 1)) - bound;
      const RootOfUnity eps = rng() % 2 ? RootOfUnity::one() : RootOfUnity(1, 2);
      for (const auto& s : {mpq_class(1), mpq_class(3, 2), mpq_class(2)}) {
        o.require(factorization_identity_check(p, a, eps, s), "identity at p=" + std::to_string(p));
        ++checked;
      }
    }
    double worst = 0;
    for (int i = 0; i < 300; ++i) {
      const auto p = primes[rng() % primes.size()];
      const double a = std::uniform_real_distribution<double>(-2, 2)(rng) * std::sqrt(static_cast<double>(p));
      const int e = rng() % 2 ? 1 : -1;
      for (int d = 1; d <= 6; ++d) {
        const auto got = bp_power_trace(a, e == 1 ? RootOfUnity::one() : RootOfUnity(1, 2), p, d);
        const auto want = root_power(a, e, static_cast<double>(p), d);
        worst = std::max(worst, std::abs(got - want) / std::max(1.0, std::abs(want)));
      }
    }
    o.require(worst < 1e-9, "b_p recurrence");
    o.detail << checked << " exact checks, worst b_p relative error " << worst;
  });

  criterion(2, "hecke_ap = ec_ap for y^2 = x^3 - x up to 1e4", 10.0, [](Outcome& o) {
    const auto src = hecke_32a();
    const auto E = curve_32a();
    int count = 0, bad = 0;
    for (auto p : sieve_primes(10000).primes()) {
      if (p == 2) continue;
      ++count;
      const auto v = hecke_ap(src, p);
      if (!v.ap_exact || *v.ap_exact != ec_ap(E, p)) ++bad;
    }
    o.require(bad == 0, std::to_string(bad) + " mismatches");
    o.detail << count << " good primes compared";
  });

  criterion(3, "Chebotarev densities at t = 1e7", 30.0, [](Outcome& o) {
    const auto chi4 = DirichletCharacter::kronecker(-4);
    const std::pair<std::int64_t, RootOfUnity> a7[] = {{3, RootOfUnity(1, 3)}};
    const auto chi7 = DirichletCharacter::from_values(7, a7);
    const std::pair<std::int64_t, RootOfUnity> a16[] = {{5, RootOfUnity(1, 4)}, {15, RootOfUnity::one()}};
    const auto chi16 = DirichletCharacter::from_values(16, a16);
    double worst = 0;
    for (const auto& chi : {chi4, chi7, chi16}) {
      const auto N = chi.modulus();
      const DirichletCharacter tw[] = {chi};
      const auto field = field_from_inner_twists(N, DirichletCharacter::trivial(N), tw);
      const auto part = partition_primes(field, DirichletCharacter::trivial(N), 10000000);
      std::map<int, double> freq;
      for (const auto& r : part.rows) freq[r.degree] += 1;
      for (auto& [d, f] : freq) f /= static_cast<double>(part.rows.size());
      for (const auto& [d, want] : field.degree_densities()) {
        const double got = freq.count(d) ? freq[d] : 0.0;
        worst = std::max(worst, std::abs(got - want));
      }
      o.detail << "[L:Q]=" << field.degree() << " ";
    }
    o.require(worst < 0.005, "density gap");
    o.detail << "worst gap " << worst;
  });

  criterion(4, "CM equidistribution for Q(i) to 1e6", 60.0, [](Outcome& o) {
    const auto src = hecke_32a();
    const auto s = cm_angle_samples(src, 1000000);
    const double ku = ks_distance(s.angles, Measure::uniform_angle(pi));
    const double ka = ks_distance(s.cosines, Measure::cm_arcsine());
    const auto ideal = cm_angle_samples(src, 1000000, 1, AngleMode::per_ideal);
    const double half = sector_fraction(ideal.angles, pi);
    o.require(ku < 0.01, "KS uniform");
    o.require(ka < 0.01, "KS arcsine");
    o.require(std::abs(half - 0.5) < 0.01, "sector fraction");
    o.detail << s.angles.size() << " primes, KS uniform " << ku << ", KS arcsine " << ka << ", sector(pi) " << half;
  });

  criterion(5, "Sato-Tate in progressions for 11a to 1e5", 180.0, [](Outcome& o) {
    const Newform f(curve_11a());
    const RootOfUnity one = RootOfUnity::one();
    const double all = ks_distance(sato_tate_progression_samples(f, 1, 0, one, 100000), Measure::sato_tate());
    const double c1 = ks_distance(sato_tate_progression_samples(f, 4, 1, one, 100000), Measure::sato_tate());
    const double c3 = ks_distance(sato_tate_progression_samples(f, 4, 3, one, 100000), Measure::sato_tate());
    const Newform cm(curve_32a());
    const double contrast = ks_distance(sato_tate_progression_samples(cm, 1, 0, one, 100000), Measure::sato_tate());
    o.require(all < 0.05 && c1 < 0.05 && c3 < 0.05, "KS below 0.05");
    o.require(contrast > 0.1, "CM contrast");
    o.detail << "KS all " << all << ", 1 mod 4 " << c1 << ", 3 mod 4 " << c3 << ", 32a " << contrast;
  });

  criterion(6, "expectation limits on the 11a x chi4 pair to 1e5", 60.0, [](Outcome& o) {
    const Newform f(fixture::twisted_orbit(DirichletCharacter::kronecker(-4), 100000));
    o.require(f.level() == 44, "level 44");
    const auto s = s2_b_samples(f, f.partition(100000), 100000);
    const auto ex = expectation_sequence(s.plus_primes, s.plus_b, 100000);
    const double ks = ks_distance(s.plus, Measure::mu_plus());
    const auto K = k_function(s.plus_primes, s.plus_b, -1.0, 100000);
    bool decreasing = true;
    std::ostringstream ks_trace;
    for (std::size_t i = 0; i < K.size(); ++i) {
      if (K[i].t < 1000) continue;
      ks_trace << " " << K[i].t << ":" << K[i].value;
      if (i > 0 && K[i - 1].t >= 1000 && std::abs(K[i].value) >= std::abs(K[i - 1].value)) decreasing = false;
    }
    o.require(std::abs(ex.limit + 1) < 0.05, "mean of b_p/p");
    o.require(ks < 0.05, "KS mu+");
    o.require(std::abs(K.back().value) < 0.05 && decreasing, "K+ decreasing");
    o.detail << s.plus.size() << " primes in S2+, mean b_p/p " << ex.limit << ", KS mu+ " << ks << ", K+"
             << ks_trace.str();
  });

  criterion(7, "order estimator calibration at T = 1e7", 120.0, [](Outcome& o) {
    const std::uint64_t T = 10000000;
    const auto P = sieve_primes(T).primes();
    const auto part = gaussian_partition(T);
    const double LQ = static_cast<double>(part.field_degree);
    const double z = order_estimate(zeta_factors(P), T).r;
    const double s1 = order_estimate(zeta_factors(part.s1, LQ), T).r;
    const double gp = order_estimate(dedekind_crop_factors(part.s2_plus, +1, LQ), T).r;
    const double gm = order_estimate(dedekind_crop_factors(part.s2_plus, -1, LQ), T).r;
    o.require(std::abs(z + 1) <= 0.15, "zeta");
    o.require(std::abs(s1 + 1) <= 0.2, "S1 crop");
    o.require(std::abs(gp - 1) <= 0.2, "G+");
    o.require(std::abs(gm + 1) <= 0.2, "G-");
    o.detail << "zeta " << z << ", S1 crop " << s1 << ", G+ " << gp << ", G- " << gm;
  });

  criterion(8, "relation arithmetic", 1.0, [](Outcome& o) {
    const auto qm = InvariantRecord::make(2, 1, 2, 2, 1);
    o.require(qm.n1 == 1 && qm.n2 == 0, "QM n1, n2");
    o.require(qm_required_crop_order(0) == -1, "QM r = 0");
    for (std::int64_t x = -1; x <= 11; x += 2)
      o.require(order_relations_noncm(qm, x, x).find("ord L(A_f/Q)")->value == (x + 1) / 2, "QM display");
    o.require(gross_order(11) == 1 && gross_order(7) == 0, "Gross orders");
    bool threw = false;
    try {
      gross_order(13);
    } catch (const ValidationError&) {
      threw = true;
    }
    o.require(threw, "Gross 13");
    o.require(compute_n1_n2(2, 1) == std::pair{1, 0} && compute_n1_n2(4, 2) == std::pair{1, 1}, "n1 n2 table");
    threw = false;
    try {
      compute_n1_n2(3, 1);
    } catch (const ValidationError&) {
      threw = true;
    }
    o.require(threw, "(3,1) rejected");
    o.require(weil_restriction_test(1, 4, 2, 2) && !weil_restriction_test(2, 4, 2, 2) &&
                  !weil_restriction_test(1, 4, 2, 4),
              "Weil restriction table");
    o.detail << "QM, Gross, n1/n2 and Weil-restriction tables";
  });

  criterion(9, "convergence machinery", 30.0, [](Outcome& o) {
    const auto P = sieve_primes(1000000).primes();
    std::vector<double> one(P.size(), 1.0), same(P.begin(), P.end()), alt(P.size());
    for (std::size_t i = 0; i < P.size(); ++i) alt[i] = (i % 2 == 0 ? 1.0 : -1.0) * static_cast<double>(P[i]);
    alt[0] = 0;
    const auto r1 = tail_verdict(P, one, 1000000);
    const auto r2 = tail_verdict(P, same, 1000000);
    const auto r3 = tail_verdict(P, alt, 1000000);
    o.require(r1.product_verdict == Verdict::converges && r1.series_verdict == Verdict::converges, "c = 1");
    o.require(r2.product_verdict == Verdict::diverges && r2.series_verdict == Verdict::diverges, "c = p");
    o.require(r3.product_verdict == Verdict::converges && r3.series_verdict == Verdict::converges, "c = (-1)^n p");
    std::mt19937_64 rng(9);
    std::normal_distribution<double> N(0, 1);
    double worst = 0;
    for (int k = 0; k < 10; ++k) {
      std::vector<double> c(P.size());
      for (std::size_t i = 0; i < P.size(); ++i)
        c[i] = static_cast<double>(P[i]) * (0.1 * k + 0.1) + N(rng) * std::sqrt(static_cast<double>(P[i]));
      worst = std::max(worst, partial_summation_check(P, c, 999999.5 - 1000.0 * k).relative_error());
    }
    o.require(worst < 1e-6, "partial summation");
    o.detail << "verdicts " << to_string(r1.product_verdict) << "/" << to_string(r2.product_verdict) << "/"
             << to_string(r3.product_verdict) << ", partial summation worst relative error " << worst;
  });

  std::printf("%d criteria failed\n", failures);
  return failures == 0 ? 0 : 1;
}
