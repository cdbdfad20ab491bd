#include "cropped/coeffs/hecke.hpp"

#include "cropped/error.hpp"

namespace cropped {

QuadInt HeckeCharacterSource::normalized_generator(std::uint64_t p) const {
  if (!normalization) return canonical_generator(ray, p);
  const auto& K = ray.field();
  const QuadInt alpha = K.norm_generator(p);
  const IdealQuotient q(K, *normalization);
  const auto one = q.index({1, 0});
  std::optional<QuadInt> found;
  for (const auto& u : K.units()) {
    const QuadInt cand = K.mul(u, alpha);
    if (q.index(cand) != one) continue;
    if (found) throw ValidationError("normalization does not pin a unique associate");
    found = cand;
  }
  if (!found) throw ValidationError("no associate satisfies the normalization");
  return *found;
}

HeckeValue hecke_ap(const HeckeCharacterSource& source, std::uint64_t p) {
  const auto& ray = source.ray;
  const auto& K = ray.field();
  if (!K.native()) throw IngestionOnlyError("Hecke characters need a class-number-one field");
  if (ray.level() % static_cast<std::int64_t>(p) == 0)
    throw ExcludedPrimeError(p, "prime divides the CM level");
  HeckeValue v;
  v.split = K.split_type(p);
  v.eps = *ray.nebentypus()(static_cast<std::int64_t>(p));
  if (v.split == SplitType::ramified) throw ExcludedPrimeError(p, "ramified in K");
  if (v.split == SplitType::inert) {
    v.ap = 0;
    v.ap_exact = 0;
    return v;
  }
  const QuadInt alpha = source.normalized_generator(p);
  const QuadInt beta = K.conj(alpha);
  const RootOfUnity ea = ray.eta(alpha), eb = ray.eta(beta);
  v.psi_c = ea.to_complex() * K.to_complex(alpha);
  v.psi_bar_c = eb.to_complex() * K.to_complex(beta);
  v.ap = v.psi_c + v.psi_bar_c;
  if (K.unit_count() % ea.order() == 0 && K.unit_count() % eb.order() == 0) {
    v.psi = K.mul(K.unit_from_root(ea), alpha);
    v.psi_bar = K.mul(K.unit_from_root(eb), beta);
    const QuadInt sum = K.add(*v.psi, *v.psi_bar);
    if (sum.b == 0) v.ap_exact = sum.a;
  }
  return v;
}

HeckeCharacterSource hecke_32a() {
  const std::pair<QuadInt, RootOfUnity> eta[] = {{{0, 1}, RootOfUnity(3, 4)}};
  return {RayClassDescriptor(ImagQuadField(-4), {-2, 2}, eta, DirichletCharacter::trivial(32)),
          QuadInt{-2, 2}};
}

}  // namespace cropped
