#include "cropped/asympt/statistics.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <set>
#include <sstream>

#include "cropped/arith/sieve.hpp"
#include "cropped/error.hpp"

namespace cropped {

EmpiricalDistribution::EmpiricalDistribution(std::vector<double> v, std::string t)
    : values(std::move(v)), tag(std::move(t)) {
  std::sort(values.begin(), values.end());
}

double EmpiricalDistribution::mean() const {
  if (values.empty()) return 0;
  return std::accumulate(values.begin(), values.end(), 0.0) / static_cast<double>(values.size());
}

std::string EmpiricalDistribution::to_csv(const Measure& m) const {
  std::ostringstream os;
  os.precision(12);
  os << "x,empirical_cdf,model_cdf\n";
  const double n = static_cast<double>(values.size());
  for (std::size_t i = 0; i < values.size();) {
    std::size_t j = i;
    while (j < values.size() && values[j] == values[i]) ++j;
    os << values[i] << "," << static_cast<double>(j) / n << "," << m.cdf(values[i]) << "\n";
    i = j;
  }
  return os.str();
}

double ks_distance(std::span<const double> s, const Measure& m) {
  if (s.empty()) throw ValidationError("ks_distance needs at least one sample");
  const double n = static_cast<double>(s.size());
  double d = 0;
  for (std::size_t i = 0; i < s.size();) {
    std::size_t j = i;
    while (j < s.size() && s[j] == s[i]) ++j;
    if (j < s.size() && s[j] < s[i]) throw ValidationError("samples must be sorted");
    const double F = m.cdf(s[i]);
    d = std::max({d, std::abs(F - static_cast<double>(i) / n), std::abs(static_cast<double>(j) / n - F)});
    i = j;
  }
  return d;
}

std::function<bool(const QuadInt&)> ray_class_filter(const ImagQuadField& K, QuadInt n, QuadInt rep) {
  const IdealQuotient q(K, n);
  std::set<std::int64_t> cls;
  for (const auto& u : K.units()) cls.insert(q.index(K.mul(u, rep)));
  return [q, cls](const QuadInt& a) { return cls.count(q.index(a)) > 0; };
}

CmAngleSamples cm_angle_samples(const HeckeCharacterSource& src, std::uint64_t t, int n, AngleMode mode,
                                const std::function<bool(const QuadInt&)>& class_filter) {
  const auto& ray = src.ray;
  const auto& K = ray.field();
  if (!K.native()) throw IngestionOnlyError("angle samples need a class-number-one field");
  if (n < 1) throw ValidationError("n must be positive");
  if (mode == AngleMode::per_ideal && n != 1) throw ValidationError("ideal mode uses n = 1");
  constexpr double two_pi = 2 * std::numbers::pi;
  std::vector<double> angles, cosines;
  for (auto p : sieve_primes(t).coprime_to(static_cast<std::uint64_t>(ray.level()))) {
    if (K.split_type(p) != SplitType::split) continue;
    if (ray.degree() > 2 && cm_residue_degree(ray, p).prime_degree != n) continue;
    if (ray.degree() <= 2 && n != 1) continue;
    const auto v = hecke_ap(src, p);
    const QuadInt alpha = src.normalized_generator(p);
    const double scale = std::pow(static_cast<double>(p), n / 2.0);
    if (mode == AngleMode::per_ideal) {
      for (int k = 0; k < 2; ++k) {
        const QuadInt gen = k == 0 ? alpha : K.conj(alpha);
        if (class_filter && !class_filter(gen)) continue;
        double a = std::arg(k == 0 ? v.psi_c : v.psi_bar_c);
        if (a < 0) a += two_pi;
        angles.push_back(a);
        cosines.push_back(std::cos(a));
      }
      continue;
    }
    const auto z = std::pow(v.psi_c, n) / scale;
    const bool upper = std::arg(z) > 0;
    const QuadInt gen = upper ? alpha : K.conj(alpha);
    if (class_filter && !class_filter(gen)) continue;
    const double a = std::abs(std::arg(upper ? z : std::pow(v.psi_bar_c, n) / scale));
    angles.push_back(a);
    cosines.push_back(std::cos(a));
  }
  const std::string tag = "cm angles, t=" + std::to_string(t) + ", n=" + std::to_string(n);
  return {EmpiricalDistribution(std::move(angles), tag), EmpiricalDistribution(std::move(cosines), tag + " (cos)")};
}

double sector_fraction(const EmpiricalDistribution& angles, double theta) {
  if (angles.values.empty()) throw ValidationError("no angles");
  const auto it = std::upper_bound(angles.values.begin(), angles.values.end(), theta);
  return static_cast<double>(it - angles.values.begin()) / static_cast<double>(angles.size());
}

EmpiricalDistribution sato_tate_progression_samples(const Newform& f, std::int64_t M, std::int64_t m,
                                                    const RootOfUnity& zeta, std::uint64_t t, int embedding) {
  if (M < 1 || std::gcd(m, M) != 1) throw ValidationError("need gcd(m, M) = 1");
  const auto zc = zeta.to_complex();
  const auto z2 = zeta.pow(2);
  std::vector<double> out;
  for (const auto& r : f.records(t)) {
    if (static_cast<std::int64_t>(r.p % static_cast<std::uint64_t>(M)) != ((m % M) + M) % M) continue;
    if (r.eps != z2)
      throw ValidationError("zeta^2 != eps(p) at p=" + std::to_string(r.p));
    const auto v = r.ap.at(static_cast<std::size_t>(embedding)) / (2.0 * std::sqrt(static_cast<double>(r.p)) * zc);
    if (std::abs(v.imag()) > 1e-9) throw ValidationError("non-real normalized a_p at p=" + std::to_string(r.p));
    out.push_back(v.real());
  }
  return {std::move(out), "a_p/(2 sqrt p zeta), p = " + std::to_string(m) + " mod " + std::to_string(M)};
}

S2Samples s2_b_samples(const Newform& f, const PrimePartition& part, std::uint64_t t, int embedding) {
  S2Samples s;
  std::vector<double> plus, minus;
  for (const auto& row : part.rows) {
    if (row.p > t) break;
    const bool is_plus = row.label == "S2+", is_minus = row.label == "S2-";
    if (!is_plus && !is_minus) continue;
    const auto r = f.record(row.p);
    const auto a = r.ap.at(static_cast<std::size_t>(embedding));
    const auto b = a * a - 2.0 * static_cast<double>(row.p) * r.eps.to_complex();
    if (std::abs(b.imag()) > 1e-6 * static_cast<double>(row.p))
      throw ValidationError("non-real b_p at p=" + std::to_string(row.p));
    const double x = b.real() / (2.0 * static_cast<double>(row.p));
    (is_plus ? plus : minus).push_back(x);
    (is_plus ? s.plus_primes : s.minus_primes).push_back(row.p);
    (is_plus ? s.plus_b : s.minus_b).push_back(b.real());
  }
  if (plus.empty() && minus.empty()) throw ValidationError("S2 empty");
  s.plus = {std::move(plus), "b_p/(2p) over S2+"};
  s.minus = {std::move(minus), "b_p/(2p) over S2-"};
  return s;
}

const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::converges: return "converges";
    case Verdict::diverges: return "diverges";
    case Verdict::inconclusive: return "inconclusive";
  }
  return "?";
}

Verdict classify_increments(std::span<const SeriesPoint> pts) {
  if (pts.size() < 3) return Verdict::inconclusive;
  const auto& a = pts[pts.size() - 3];
  const auto& b = pts[pts.size() - 2];
  const auto& c = pts[pts.size() - 1];
  const double d1 = std::abs(b.value - a.value), d2 = std::abs(c.value - b.value);
  const double scale = std::max(1.0, std::abs(c.value));
  if (d2 < 1e-5 * scale && d1 < 1e-4 * scale) return Verdict::converges;
  if (d1 == 0) return Verdict::inconclusive;
  // Increments ~ (log t)^-a: summable iff a > 1.
  const double lb = std::log(static_cast<double>(b.t)), lc = std::log(static_cast<double>(c.t));
  const double expo = d2 == 0 ? INFINITY : std::log(d1 / d2) / std::log(lc / lb);
  if (expo > 1.5) return Verdict::converges;
  if (expo <= 1.2 && d2 >= 1e-3) return Verdict::diverges;
  return Verdict::inconclusive;
}

std::vector<std::uint64_t> decade_checkpoints(std::uint64_t first, std::uint64_t t) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t x = 10; x <= t; x *= 10)
    if (x >= first) out.push_back(x);
  if (out.empty() || out.back() != t) out.push_back(t);
  return out;
}

namespace {

void check_lengths(std::span<const std::uint64_t> primes, std::span<const double> c) {
  if (primes.size() != c.size()) throw ValidationError("primes and values differ in length");
  for (std::size_t i = 1; i < primes.size(); ++i)
    if (primes[i] <= primes[i - 1]) throw ValidationError("primes must be increasing");
}

// Calls emit(t, index) at each checkpoint with the number of primes <= t.
template <class F>
void at_checkpoints(std::span<const std::uint64_t> primes, const std::vector<std::uint64_t>& cps, F emit) {
  std::size_t i = 0;
  for (auto cp : cps) {
    while (i < primes.size() && primes[i] <= cp) ++i;
    emit(cp, i);
  }
}

}  // namespace

ExpectationReport expectation_sequence(std::span<const std::uint64_t> primes, std::span<const double> c,
                                       std::uint64_t t) {
  check_lengths(primes, c);
  if (primes.empty()) throw ValidationError("expectation needs at least one prime");
  std::vector<double> prefix(primes.size() + 1, 0.0);
  for (std::size_t i = 0; i < primes.size(); ++i) prefix[i + 1] = prefix[i] + c[i] / static_cast<double>(primes[i]);
  ExpectationReport r;
  at_checkpoints(primes, decade_checkpoints(primes.front(), t), [&](std::uint64_t cp, std::size_t n) {
    if (n > 0) r.running.push_back({cp, prefix[n] / static_cast<double>(n)});
  });
  r.limit = r.running.back().value;
  r.verdict = Verdict::inconclusive;
  if (r.running.size() >= 3) {
    const double scale = std::max(1.0, std::abs(r.limit));
    const auto& pts = r.running;
    const double d1 = std::abs(pts[pts.size() - 2].value - pts[pts.size() - 3].value);
    const double d2 = std::abs(pts.back().value - pts[pts.size() - 2].value);
    if (d1 < 0.05 * scale && d2 < 0.05 * scale) r.verdict = Verdict::converges;
  }
  return r;
}

std::vector<SeriesPoint> k_function(std::span<const std::uint64_t> primes, std::span<const double> c,
                                    double ell, std::uint64_t t) {
  check_lengths(primes, c);
  std::vector<SeriesPoint> out;
  double sum = 0;
  std::size_t done = 0;
  at_checkpoints(primes, decade_checkpoints(primes.empty() ? 1 : primes.front(), t),
                 [&](std::uint64_t cp, std::size_t n) {
                   for (; done < n; ++done) sum += c[done] / static_cast<double>(primes[done]);
                   if (n > 0) out.push_back({cp, sum / static_cast<double>(n) - ell});
                 });
  return out;
}

KIntegral k_integral(std::span<const std::uint64_t> primes, std::span<const double> c, double ell,
                     std::uint64_t t_max) {
  check_lengths(primes, c);
  KIntegral r;
  if (primes.empty() || primes.front() > t_max) return r;
  const auto cps = decade_checkpoints(primes.front(), t_max);
  std::size_t next_cp = 0;
  double sum = 0, integral = 0;
  auto lolo = [](double x) { return std::log(std::log(x)); };
  for (std::size_t i = 0; i < primes.size() && primes[i] <= t_max; ++i) {
    sum += c[i] / static_cast<double>(primes[i]);
    const double K = std::abs(sum / static_cast<double>(i + 1) - ell);
    const double a = static_cast<double>(primes[i]);
    const double b = (i + 1 < primes.size() && primes[i + 1] <= t_max) ? static_cast<double>(primes[i + 1])
                                                                         : static_cast<double>(t_max);
    // Checkpoints falling inside [a, b) get a partial piece.
    double from = a;
    while (next_cp < cps.size() && static_cast<double>(cps[next_cp]) < b) {
      const double cp = static_cast<double>(cps[next_cp]);
      if (cp >= from) {
        integral += K * (lolo(cp) - lolo(from));
        from = cp;
      }
      r.running.push_back({cps[next_cp], integral});
      ++next_cp;
    }
    integral += K * (lolo(b) - lolo(from));
  }
  while (next_cp < cps.size()) r.running.push_back({cps[next_cp++], integral});
  r.value = integral;
  r.verdict = classify_increments(r.running);
  return r;
}

TailReport tail_verdict(std::span<const std::uint64_t> primes, std::span<const double> c,
                              std::uint64_t t) {
  check_lengths(primes, c);
  if (primes.empty()) throw ValidationError("tail_verdict needs at least one prime");
  TailReport r;
  // |c_n| <= k p_n: k must not keep growing in the last decade.
  double k_early = 0, k_late = 0;
  for (std::size_t i = 0; i < primes.size() && primes[i] <= t; ++i) {
    const double ratio = std::abs(c[i]) / static_cast<double>(primes[i]);
    (primes[i] * 10 <= t ? k_early : k_late) = std::max(primes[i] * 10 <= t ? k_early : k_late, ratio);
  }
  r.k = std::max(k_early, k_late);
  if (k_early > 0 && k_late > 2 * k_early + 1e-12)
    throw ValidationError("|c_n| <= k p_n fails: c_n/p_n keeps growing");
  double lp = 0, ser = 0, bound = 0;
  std::size_t done = 0;
  at_checkpoints(primes, decade_checkpoints(primes.front(), t), [&](std::uint64_t cp, std::size_t n) {
    for (; done < n; ++done) {
      const double p = static_cast<double>(primes[done]);
      const double x = c[done] / (p * p);
      if (!(x < 1)) throw ValidationError("factor 1 - c/p^2 is not positive at p=" + std::to_string(primes[done]));
      lp -= std::log1p(-x);
      ser += x;
      bound += x * x / (2 * (1 - std::abs(x)));
      r.max_discrepancy = std::max(r.max_discrepancy, std::abs(lp - ser));
    }
    r.log_product.push_back({cp, lp});
    r.series.push_back({cp, ser});
  });
  r.discrepancy_bound = bound;
  r.product_verdict = classify_increments(r.log_product);
  r.series_verdict = classify_increments(r.series);
  return r;
}

double PartialSummation::relative_error() const {
  return std::abs(lhs - rhs) / std::max(std::abs(lhs), 1e-300);
}

PartialSummation partial_summation_check(std::span<const std::uint64_t> primes, std::span<const double> c,
                                         double t) {
  check_lengths(primes, c);
  PartialSummation r;
  double A = 0, integral = 0;
  for (std::size_t i = 0; i < primes.size() && static_cast<double>(primes[i]) <= t; ++i) {
    const double p = static_cast<double>(primes[i]);
    r.lhs += c[i] / (p * p);
    A += c[i] / p;
    const double next = (i + 1 < primes.size() && static_cast<double>(primes[i + 1]) <= t)
                            ? static_cast<double>(primes[i + 1])
                            : t;
    integral += A * (1 / p - 1 / next);  // int_p^next A x^-2 dx
  }
  r.rhs = A / t + integral;
  return r;
}

Sym2Report sym2_partial_sum(const Newform& f, std::int64_t M, std::int64_t m,
                            std::span<const std::uint64_t> checkpoints, int embedding) {
  if (checkpoints.empty()) throw ValidationError("sym2 needs checkpoints");
  if (M < 1) throw ValidationError("modulus must be positive");
  Sym2Report r;
  double sum = 0;
  std::size_t cp = 0;
  const auto recs = f.records(checkpoints.back());
  const auto residue = ((m % M) + M) % M;
  for (const auto& rec : recs) {
    while (cp < checkpoints.size() && rec.p > checkpoints[cp]) r.running.push_back({checkpoints[cp++], sum});
    if (static_cast<std::int64_t>(rec.p % static_cast<std::uint64_t>(M)) != residue) continue;
    const auto a = rec.ap.at(static_cast<std::size_t>(embedding));
    if (a.imag() != 0.0) throw ValidationError("sym2 sums need real a_p");
    const double p = static_cast<double>(rec.p);
    sum += ((a.real() * a.real()) - (p * rec.eps.to_complex()).real()) / (p * p);
  }
  while (cp < checkpoints.size()) r.running.push_back({checkpoints[cp++], sum});
  if (r.running.size() >= 4) {
    const auto n = r.running.size();
    const double d1 = r.running[n - 3].value - r.running[n - 4].value;
    const double d2 = r.running[n - 2].value - r.running[n - 3].value;
    const double d3 = r.running[n - 1].value - r.running[n - 2].value;
    const bool monotone = (d1 > 0 && d2 > 0 && d3 > 0) || (d1 < 0 && d2 < 0 && d3 < 0);
    r.drift = monotone && std::abs(d1 + d2 + d3) > 0.05;
  }
  return r;
}

nlohmann::json to_json(const std::vector<SeriesPoint>& pts) {
  auto j = nlohmann::json::array();
  for (const auto& p : pts) j.push_back({{"t", p.t}, {"value", p.value}});
  return j;
}

}  // namespace cropped
