#include "cropped/euler/euler.hpp"

#include <cmath>
#include <iomanip>
#include <numeric>
#include <sstream>

namespace cropped {

namespace {

mpq_class prime_pow(std::uint64_t p, long e) {
  mpz_class m;
  mpz_ui_pow_ui(m.get_mpz_t(), static_cast<unsigned long>(p), static_cast<unsigned long>(e >= 0 ? e : -e));
  return e >= 0 ? mpq_class(m) : mpq_class(mpz_class(1), m);
}

mpq_class pow_q(const mpq_class& x, long e) {
  mpq_class r = 1;
  mpq_class b = e >= 0 ? x : mpq_class(1) / x;
  for (unsigned long k = static_cast<unsigned long>(e >= 0 ? e : -e); k; k >>= 1, b *= b)
    if (k & 1) r *= b;
  return r;
}

int require_sign(const RootOfUnity& eps) {
  const auto s = eps.real_sign();
  if (!s) throw ValidationError("exact backend needs eps(p) = +-1");
  return *s;
}

std::int64_t exact_ap(const CoefficientRecord& r, int embedding) {
  if (embedding == 0 && r.ap_exact) return *r.ap_exact;
  const auto a = r.ap[static_cast<std::size_t>(embedding)];
  if (a.imag() != 0.0 || a.real() != std::round(a.real()))
    throw ValidationError("exact backend needs integral a_p (p=" + std::to_string(r.p) + ")");
  return static_cast<std::int64_t>(a.real());
}

std::complex<double> ap_of(const CoefficientRecord& r, int embedding) {
  if (embedding < 0 || static_cast<std::size_t>(embedding) >= r.ap.size())
    throw ValidationError("embedding index out of range");
  return r.ap[static_cast<std::size_t>(embedding)];
}

}  // namespace

mpz_class bp_power_trace(const mpz_class& a, int eps_sign, std::uint64_t p, int d) {
  if (d < 1) throw ValidationError("residue degree must be positive");
  const mpz_class pe = mpz_class(static_cast<unsigned long>(p)) * eps_sign;
  mpz_class prev = 2, cur = a;
  for (int k = 2; k <= d; ++k) {
    mpz_class next = a * cur - pe * prev;
    prev = std::move(cur);
    cur = std::move(next);
  }
  return cur;
}

std::complex<double> bp_power_trace(std::complex<double> a, const RootOfUnity& eps, std::uint64_t p,
                                    int d) {
  if (d < 1) throw ValidationError("residue degree must be positive");
  const std::complex<double> pe = static_cast<double>(p) * eps.to_complex();
  std::complex<double> prev = 2, cur = a;
  for (int k = 2; k <= d; ++k) {
    const auto next = a * cur - pe * prev;
    prev = cur;
    cur = next;
  }
  return cur;
}

std::complex<double> euler_factor(std::uint64_t p, std::complex<double> a, const RootOfUnity& eps,
                                  double sigma, Twist twist) {
  if (!(sigma > 0.5)) throw ValidationError("euler_factor needs sigma > 1/2");
  const double x = std::pow(static_cast<double>(p), -sigma);
  const double sa = twist == Twist::plus ? 1.0 : -1.0;
  const auto den = 1.0 - sa * a * x + eps.to_complex() * static_cast<double>(p) * x * x;
  if (std::abs(den) < 1e-300) throw FactorVanishesError(p);
  return 1.0 / den;
}

QSqrt euler_factor_exact(std::uint64_t p, std::int64_t a, int eps_sign, const mpq_class& s, Twist twist) {
  if (eps_sign != 1 && eps_sign != -1) throw ValidationError("exact backend needs eps(p) = +-1");
  if (s <= mpq_class(1, 2)) throw ValidationError("euler_factor needs s > 1/2");
  const QSqrt X = QSqrt::prime_power(p, -s);
  const QSqrt Y = QSqrt::prime_power(p, 1 - 2 * s);
  const long sa = twist == Twist::plus ? a : -a;
  const QSqrt den = QSqrt(p, 1) - QSqrt(p, mpq_class(sa)) * X + QSqrt(p, mpq_class(eps_sign)) * Y;
  if (den.is_zero()) throw FactorVanishesError(p);
  return den.inverse();
}

bool factorization_identity_check(std::uint64_t p, std::int64_t a, const RootOfUnity& eps,
                                  const mpq_class& s) {
  if (!eps.pow(2).is_one()) throw ValidationError("eps(p) not quadratic");
  const int e = *eps.real_sign();
  const QSqrt X = QSqrt::prime_power(p, -s);
  const QSqrt pe(p, mpq_class(static_cast<long>(p) * e));
  const QSqrt one(p, 1), A(p, mpq_class(a));
  const QSqrt lhs = (one - A * X + pe * X * X) * (one + A * X + pe * X * X);
  const mpz_class b = bp_power_trace(mpz_class(static_cast<long>(a)), e, p, 2);
  const QSqrt X2 = QSqrt::prime_power(p, -2 * s);
  const QSqrt rhs = one - QSqrt(p, mpq_class(b)) * X2 + QSqrt::prime_power(p, 2 * (1 - 2 * s));
  return lhs == rhs;
}

std::complex<double> local_log(const LocalFactor& f, double sigma) {
  const double lp = std::log(static_cast<double>(f.p));
  const double x = std::exp(-f.d * sigma * lp);
  const double y = std::exp(f.d * (1.0 - 2.0 * sigma) * lp);
  const auto poly = 1.0 - f.B * x + f.E * y;
  if (std::abs(poly) < 1e-300) throw FactorVanishesError(f.p);
  if (f.B.imag() == 0.0 && f.E.imag() == 0.0 && poly.real() > 0) return -f.exponent * std::log(poly.real());
  return -f.exponent * std::log(poly);
}

double tail_log_bound(double sigma, std::uint64_t T, double exponent) {
  if (!(sigma > 1.5) || T < 2) return std::numeric_limits<double>::infinity();
  const double t = static_cast<double>(T);
  const double u = std::pow(t, 0.5 - sigma);
  return 2.0 * std::abs(exponent) * std::pow(t, 1.5 - sigma) / ((sigma - 1.5) * (1.0 - u));
}

ProductResult product(std::span<const LocalFactor> factors, double sigma, std::uint64_t T) {
  ProductResult r;
  r.sigma = sigma;
  r.T = T;
  std::uint64_t next = 10;
  auto flush = [&](std::uint64_t at) {
    r.checkpoints.push_back({at, sigma, std::exp(r.log_value), r.log_value});
  };
  double max_exp = 0;
  std::uint64_t last = 0;
  for (const auto& f : factors) {
    if (f.p < last) throw std::logic_error("factors must be ascending in p");
    last = f.p;
    if (f.p > T) break;
    while (f.p > next && next <= T) {
      flush(next);
      next *= 10;
    }
    r.log_value += local_log(f, sigma);
    max_exp = std::max(max_exp, std::abs(f.exponent));
    ++r.factors;
  }
  while (next <= T) {
    flush(next);
    next *= 10;
  }
  if (r.checkpoints.empty() || r.checkpoints.back().T != T) flush(T);
  r.value = std::exp(r.log_value);
  if (sigma > 1.5) r.tail_log_bound = tail_log_bound(sigma, T, std::max(max_exp, 1.0));
  return r;
}

std::string ProductResult::to_csv() const {
  std::ostringstream os;
  os << std::setprecision(17);
  os << "T,sigma,value,log_value\n";
  for (const auto& c : checkpoints)
    os << c.T << "," << c.sigma << "," << c.value.real() << "," << c.log_value.real() << "\n";
  return os.str();
}

std::vector<LocalFactor> degree_one_factors(const Newform& f, std::span<const std::uint64_t> primes,
                                            std::uint64_t T, Twist twist, double exponent,
                                            int embedding) {
  std::vector<LocalFactor> out;
  out.reserve(primes.size());
  const double sa = twist == Twist::plus ? 1.0 : -1.0;
  for (auto p : primes) {
    if (p > T) break;
    const auto r = f.record(p);
    out.push_back({p, 1, sa * ap_of(r, embedding), r.eps.to_complex(), exponent});
  }
  return out;
}

ProductResult partial_product(const PartialProductSpec& spec, const Newform& f) {
  if (!(spec.sigma > 1.0)) throw ValidationError("partial products need sigma > 1");
  const auto factors = degree_one_factors(f, spec.primes, spec.T, spec.twist, spec.exponent, spec.embedding);
  return product(factors, spec.sigma, spec.T);
}

std::vector<LocalFactor> field_factors(const Newform& f, const PrimePartition& part, std::uint64_t T,
                                       int embedding) {
  if (part.bound < T) throw ValidationError("partition bound below T");
  std::vector<LocalFactor> out;
  for (const auto& row : part.rows) {
    if (row.p > T) break;
    const auto r = f.record(row.p);
    if (!r.eps.pow(row.degree).is_one())
      throw ValidationError("eps(p)^d(p) != 1 at p=" + std::to_string(row.p) + "; wrong splitting field");
    const auto b = bp_power_trace(ap_of(r, embedding), r.eps, row.p, row.degree);
    out.push_back({row.p, row.degree, b, 1.0,
                   static_cast<double>(part.field_degree) / row.degree});
  }
  return out;
}

ProductResult crop_L_over_field(const Newform& f, const PrimePartition& part, double sigma,
                                std::uint64_t T, int embedding) {
  if (!(sigma > 1.0)) throw ValidationError("crop_L_over_field needs sigma > 1");
  const auto factors = field_factors(f, part, T, embedding);
  return product(factors, sigma, T);
}

GDecomposition g_decomposition(const Newform& f, const PrimePartition& part, double sigma,
                               std::uint64_t T, int embedding) {
  if (!(sigma > 1.0)) throw ValidationError("g_decomposition needs sigma > 1");
  const auto all = field_factors(f, part, T, embedding);
  std::vector<LocalFactor> f1, f2, f3;
  const double LQ = static_cast<double>(part.field_degree);
  std::size_t i = 0;
  for (const auto& row : part.rows) {
    if (row.p > T) break;
    const auto& lf = all[i++];
    if (row.label == "S1") {
      // d = 1, or an inert CM prime with d = 2 whose factor is a square.
      const auto r = f.record(row.p);
      f1.push_back({row.p, 1, ap_of(r, embedding), r.eps.to_complex(), LQ});
    } else if (row.degree == 2) {
      f2.push_back(lf);
    } else {
      f3.push_back(lf);
    }
  }
  return {product(f1, sigma, T), product(f2, sigma, T), product(f3, sigma, T)};
}

namespace {

// (1 - B p^{-ds} + p^{d(1-2s)})^{-k} with integer k, at integer s.
mpq_class exact_factor(std::uint64_t p, int d, const mpz_class& B, const mpz_class& E, long s, long k) {
  const mpq_class poly = 1 - mpq_class(B) * prime_pow(p, -d * s) + mpq_class(E) * prime_pow(p, d * (1 - 2 * s));
  if (poly == 0) throw FactorVanishesError(p);
  return pow_q(poly, -k);
}

}  // namespace

mpq_class crop_L_over_field_exact(const Newform& f, const PrimePartition& part, long s, std::uint64_t T) {
  if (s < 2) throw ValidationError("exact crops need integer s >= 2");
  if (part.bound < T) throw ValidationError("partition bound below T");
  mpq_class v = 1;
  for (const auto& row : part.rows) {
    if (row.p > T) break;
    const auto r = f.record(row.p);
    const int e = require_sign(r.eps);
    if (!r.eps.pow(row.degree).is_one()) throw ValidationError("eps(p)^d(p) != 1");
    const auto b = bp_power_trace(mpz_class(static_cast<long>(exact_ap(r, 0))), e, row.p, row.degree);
    v *= exact_factor(row.p, row.degree, b, 1, s, part.field_degree / row.degree);
  }
  return v;
}

ExactG g_decomposition_exact(const Newform& f, const PrimePartition& part, long s, std::uint64_t T) {
  if (s < 2) throw ValidationError("exact crops need integer s >= 2");
  if (part.bound < T) throw ValidationError("partition bound below T");
  ExactG g;
  for (const auto& row : part.rows) {
    if (row.p > T) break;
    const auto r = f.record(row.p);
    const int e = require_sign(r.eps);
    const mpz_class a(static_cast<long>(exact_ap(r, 0)));
    if (row.label == "S1") {
      g.g1 *= exact_factor(row.p, 1, a, e, s, part.field_degree);
    } else {
      const auto b = bp_power_trace(a, e, row.p, row.degree);
      auto& target = row.degree == 2 ? g.g2 : g.g3;
      target *= exact_factor(row.p, row.degree, b, 1, s, part.field_degree / row.degree);
    }
  }
  return g;
}

}  // namespace cropped
