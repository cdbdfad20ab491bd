#include "cropped/splitting/cyclotomic_field.hpp"

#include "cropped/arith/modular.hpp"
#include "cropped/error.hpp"

namespace cropped {

CyclotomicSplittingField::CyclotomicSplittingField(std::int64_t level,
                                                   ResidueSubgroup fixing)
    : level_(level), fixing_(std::move(fixing)) {
  if (fixing_.modulus() != level_) {
    throw ValidationError("fixing subgroup modulus differs from the level");
  }
  UnitGroup g(level_);
  if (g.order() % static_cast<std::int64_t>(fixing_.size()) != 0) {
    throw ValidationError("fixing set is not a subgroup");
  }
  degree_ = g.order() / static_cast<std::int64_t>(fixing_.size());
  coset_order_.assign(static_cast<std::size_t>(level_), 0);
  for (auto r : g.elements()) {
    std::int64_t x = r;
    int k = 1;
    while (!fixing_.contains(x)) {
      x = mod(x * r, level_);
      ++k;
    }
    coset_order_[static_cast<std::size_t>(r)] = k;
  }
}

CyclotomicSplittingField CyclotomicSplittingField::rationals(std::int64_t level) {
  return {level, ResidueSubgroup::whole(UnitGroup(level))};
}

int CyclotomicSplittingField::residue_degree(std::uint64_t p) const {
  const auto r = static_cast<std::size_t>(p % static_cast<std::uint64_t>(level_));
  const int d = coset_order_[r];
  if (d == 0) throw ExcludedPrimeError(p, "ramified/excluded prime divides the level");
  return d;
}

std::map<int, double> CyclotomicSplittingField::degree_densities() const {
  std::map<int, double> counts;
  double total = 0;
  for (int d : coset_order_) {
    if (d == 0) continue;
    counts[d] += 1;
    total += 1;
  }
  for (auto& [_, c] : counts) c /= total;
  return counts;
}

CyclotomicSplittingField field_from_inner_twists(
    std::int64_t level, const DirichletCharacter& nebentypus,
    std::span<const DirichletCharacter> twists) {
  if (level % nebentypus.modulus() != 0) {
    throw ValidationError("nebentypus modulus does not divide the level");
  }
  ResidueSubgroup h = nebentypus.extend_to(level).kernel();
  for (const auto& chi : twists) {
    if (level % chi.modulus() != 0) {
      throw ValidationError("inner twist modulus " + std::to_string(chi.modulus()) +
                            " does not divide the level " + std::to_string(level));
    }
    h = h.intersect(chi.extend_to(level).kernel());
  }
  return {level, std::move(h)};
}

}  // namespace cropped
