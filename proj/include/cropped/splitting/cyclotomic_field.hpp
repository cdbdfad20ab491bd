#pragma once

#include <cstdint>
#include <map>
#include <span>
#include <vector>

#include "cropped/arith/dirichlet.hpp"
#include "cropped/arith/unit_group.hpp"

namespace cropped {

// Abelian field L = Q(zeta_N)^H, described by the fixing subgroup H of
// (Z/NZ)*. Frobenius at p (p not dividing N) is the coset pH.
class CyclotomicSplittingField {
 public:
  CyclotomicSplittingField(std::int64_t level, ResidueSubgroup fixing);

  // L = Q, viewed inside Q(zeta_N).
  static CyclotomicSplittingField rationals(std::int64_t level);

  std::int64_t level() const { return level_; }
  const ResidueSubgroup& fixing_subgroup() const { return fixing_; }

  // [L:Q] = |(Z/NZ)*| / |H|.
  std::int64_t degree() const { return degree_; }

  // Order of pH in (Z/NZ)*/H. Throws ExcludedPrimeError when p | N.
  int residue_degree(std::uint64_t p) const;

  // For each k, the fraction of cosets of order k (the Chebotarev density of
  // primes with d(p) = k).
  std::map<int, double> degree_densities() const;

 private:
  std::int64_t level_;
  ResidueSubgroup fixing_;
  std::int64_t degree_;
  std::vector<int> coset_order_;  // by residue mod N; 0 for non-units
};

// H = ker(eps) intersected with the kernels of the inner twists; each
// character is first extended to modulus N. Throws ValidationError when a
// modulus does not divide N.
CyclotomicSplittingField field_from_inner_twists(
    std::int64_t level, const DirichletCharacter& nebentypus,
    std::span<const DirichletCharacter> twists);

inline int residue_degree(const CyclotomicSplittingField& field, std::uint64_t p) {
  return field.residue_degree(p);
}

}  // namespace cropped
