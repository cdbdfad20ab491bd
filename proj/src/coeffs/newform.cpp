#include "cropped/coeffs/newform.hpp"

#include <limits>
#include <numeric>

#include "cropped/arith/sieve.hpp"
#include "cropped/error.hpp"

namespace cropped {

Newform::Newform(EllipticCurve curve)
    : source_(std::move(curve)),
      level_(static_cast<std::int64_t>(std::get<EllipticCurve>(source_).conductor)),
      eps_(DirichletCharacter::trivial(level_)) {
  if (level_ < 1) throw ValidationError("curve without conductor");
}

Newform::Newform(HeckeCharacterSource hecke)
    : source_(std::move(hecke)),
      level_(std::get<HeckeCharacterSource>(source_).ray.level()),
      eps_(std::get<HeckeCharacterSource>(source_).ray.nebentypus()) {}

Newform::Newform(OrbitData orbit)
    : source_(std::move(orbit)),
      level_(std::get<OrbitData>(source_).level),
      eps_(std::get<OrbitData>(source_).eps) {}

int Newform::embedding_count() const {
  if (const auto* o = orbit()) return o->n;
  return 1;
}

std::optional<std::int64_t> Newform::cm_discriminant() const {
  if (const auto* c = curve()) return c->cm_discriminant;
  if (const auto* h = hecke()) return h->ray.field().discriminant();
  return orbit()->cm_discriminant;
}

std::string Newform::describe() const {
  if (const auto* c = curve()) return "curve " + c->label;
  if (const auto* h = hecke())
    return "Hecke character on Q(sqrt(" + std::to_string(h->ray.field().discriminant()) +
           ")), level " + std::to_string(level_);
  return "orbit of level " + std::to_string(level_) + ", n=" + std::to_string(orbit()->n);
}

CoefficientRecord Newform::record(std::uint64_t p) const {
  if (level_ % static_cast<std::int64_t>(p) == 0) throw ExcludedPrimeError(p, "prime divides the level");
  CoefficientRecord r;
  r.p = p;
  if (const auto* c = curve()) {
    const auto a = ec_ap(*c, p);
    r.ap = {static_cast<double>(a)};
    r.ap_exact = a;
    r.eps = RootOfUnity::one();
    r.source = "curve";
  } else if (const auto* h = hecke()) {
    const auto v = hecke_ap(*h, p);
    r.ap = {v.ap};
    r.ap_exact = v.ap_exact;
    r.eps = v.eps;
    r.source = "hecke";
  } else {
    const auto* row = orbit()->row(p);
    if (!row) throw ValidationError("orbit has no row for p=" + std::to_string(p));
    r.ap = row->ap;
    r.eps = *row->eps;
    if (row->ap.size() == 1 && row->ap[0].imag() == 0.0 && row->ap[0].real() == std::round(row->ap[0].real()))
      r.ap_exact = static_cast<std::int64_t>(row->ap[0].real());
    r.source = "orbit";
  }
  return r;
}

std::uint64_t Newform::coverage() const {
  const auto* o = orbit();
  if (!o) return std::numeric_limits<std::uint64_t>::max();
  // Complete up to the first missing good prime.
  std::uint64_t covered = 1;
  std::size_t i = 0;
  const auto last = o->rows.empty() ? 1 : o->rows.back().p;
  for (auto p : sieve_primes(last).primes()) {
    if (level_ % static_cast<std::int64_t>(p) == 0) {
      while (i < o->rows.size() && o->rows[i].p <= p) ++i;
      covered = p;
      continue;
    }
    while (i < o->rows.size() && o->rows[i].p < p) ++i;
    if (i == o->rows.size() || o->rows[i].p != p) return covered;
    covered = p;
  }
  return covered;
}

std::vector<CoefficientRecord> Newform::records(std::uint64_t bound) const {
  std::vector<CoefficientRecord> out;
  if (const auto* o = orbit()) {
    for (const auto& row : o->rows)
      if (row.p <= bound && level_ % static_cast<std::int64_t>(row.p) != 0) out.push_back(record(row.p));
    return out;
  }
  for (auto p : sieve_primes(bound).coprime_to(static_cast<std::uint64_t>(level_))) out.push_back(record(p));
  return out;
}

PrimePartition Newform::partition(std::uint64_t bound) const {
  if (const auto* h = hecke()) return partition_primes(h->ray, bound);
  if (const auto* c = curve()) {
    if (c->cm_discriminant) {
      if (c->cm_discriminant == -4 && c->a == curve_32a().a) return partition_primes(hecke_32a().ray, bound);
      throw IngestionOnlyError("no built-in Hecke character for CM curve " + c->label);
    }
    return partition_primes(CyclotomicSplittingField::rationals(level_), eps_, bound);
  }
  const auto& o = *orbit();
  if (!o.d_override.empty()) {
    std::int64_t lcm = 1;
    for (const auto& [p, d] : o.d_override) lcm = std::lcm(lcm, static_cast<std::int64_t>(d));
    return partition_from_degrees(
        level_, lcm, bound,
        [&](std::uint64_t p) {
          const auto it = o.d_override.find(p);
          if (it == o.d_override.end())
            throw ValidationError("d_override has no entry for p=" + std::to_string(p));
          return it->second;
        },
        [&](std::uint64_t p) { return *eps_(static_cast<std::int64_t>(p)); }, o.cm_discriminant);
  }
  if (o.cm_discriminant)
    throw IngestionOnlyError("CM orbit needs a d_override table for its partition");
  std::vector<DirichletCharacter> chis;
  for (const auto& t : o.twists) chis.push_back(t.chi);
  return partition_primes(field_from_inner_twists(level_, eps_, chis), eps_, bound);
}

}  // namespace cropped
