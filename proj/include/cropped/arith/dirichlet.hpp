#pragma once

#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "cropped/arith/root_of_unity.hpp"
#include "cropped/arith/unit_group.hpp"

namespace cropped {

// Dirichlet character mod M with exact root-of-unity values. Stored as its
// values on the canonical generators of (Z/MZ)* plus a full value table.
class DirichletCharacter {
 public:
  DirichletCharacter(std::shared_ptr<const UnitGroup> group,
                     std::vector<RootOfUnity> generator_values);

  static DirichletCharacter trivial(std::int64_t modulus);

  // Character determined by prescribed values on arbitrary residues that
  // generate (Z/MZ)*. Throws ValidationError if the assignment is not a
  // well-defined homomorphism or the residues do not generate the group.
  static DirichletCharacter from_values(
      std::int64_t modulus,
      std::span<const std::pair<std::int64_t, RootOfUnity>> assignment);

  // Kronecker character n -> (D/n) of a fundamental discriminant, mod |D|.
  static DirichletCharacter kronecker(std::int64_t discriminant);

  std::int64_t modulus() const { return group_->modulus(); }
  const UnitGroup& group() const { return *group_; }
  std::span<const RootOfUnity> generator_values() const { return gen_values_; }

  // chi(n); empty when gcd(n, M) > 1.
  CharValue operator()(std::int64_t n) const;

  std::int64_t order() const { return order_; }
  bool is_trivial() const { return order_ == 1; }

  // {a in (Z/MZ)* : chi(a) = 1}.
  ResidueSubgroup kernel() const;

  // Smallest divisor c of M such that chi factors through (Z/cZ)*.
  std::int64_t conductor() const;

  // The character mod N (a multiple of M) induced from this one.
  DirichletCharacter extend_to(std::int64_t new_modulus) const;

  DirichletCharacter operator*(const DirichletCharacter& o) const;
  DirichletCharacter pow(std::int64_t e) const;

  // All characters of (Z/MZ)*, trivial first.
  static std::vector<DirichletCharacter> all(std::int64_t modulus);

  std::string describe() const;

  friend bool operator==(const DirichletCharacter& a,
                         const DirichletCharacter& b) {
    return a.modulus() == b.modulus() && a.gen_values_ == b.gen_values_;
  }

 private:
  void build_table();

  std::shared_ptr<const UnitGroup> group_;
  std::vector<RootOfUnity> gen_values_;
  std::vector<RootOfUnity> table_;  // indexed by residue; non-units unused
  std::int64_t order_ = 1;
};

// char_eval / char_order / char_kernel as free functions.
inline CharValue char_eval(const DirichletCharacter& chi, std::int64_t n) {
  return chi(n);
}
inline std::int64_t char_order(const DirichletCharacter& chi) {
  return chi.order();
}
inline ResidueSubgroup char_kernel(const DirichletCharacter& chi) {
  return chi.kernel();
}

}  // namespace cropped
