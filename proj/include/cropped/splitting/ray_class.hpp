#pragma once

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "cropped/arith/dirichlet.hpp"
#include "cropped/splitting/imag_quad.hpp"

namespace cropped {

// The finite ring O/mO for a nonzero m in O, with canonical residues
// x + y*omega, 0 <= x < A, 0 <= y < C, from the Hermite normal form of the
// lattice mO.
class IdealQuotient {
 public:
  IdealQuotient(const ImagQuadField& field, QuadInt generator);

  std::int64_t size() const { return a_ * c_; }
  const QuadInt& generator() const { return m_; }

  // Index in [0, size()) of the residue class of z.
  std::int64_t index(const QuadInt& z) const;
  QuadInt element(std::int64_t idx) const { return {idx % a_, idx / a_}; }

  std::int64_t mul_index(std::int64_t i, std::int64_t j) const;

  // Indices of (O/m)*, ascending.
  const std::vector<std::int64_t>& units() const { return units_; }
  bool is_unit(std::int64_t idx) const { return unit_[static_cast<std::size_t>(idx)]; }

 private:
  ImagQuadField field_;
  QuadInt m_;
  std::int64_t a_ = 1, b_ = 0, c_ = 1;
  std::vector<std::int64_t> units_;
  std::vector<bool> unit_;
};

// CM data for a class-number-one field: conductor m, the finite character
// eta on (O/m)*, and the nebentypus eps mod N = |D| Norm(m). Construction
// verifies that eta is a well-defined character, that no unit other than 1
// lies in ker eta, and that eps(n) = eta(n) chi_D(n) for n coprime to N.
class RayClassDescriptor {
 public:
  RayClassDescriptor(ImagQuadField field, QuadInt conductor,
                     std::span<const std::pair<QuadInt, RootOfUnity>> eta_assignment,
                     DirichletCharacter nebentypus);

  const ImagQuadField& field() const { return field_; }
  const QuadInt& conductor() const { return conductor_; }
  std::int64_t level() const { return level_; }
  const DirichletCharacter& nebentypus() const { return eps_; }
  const IdealQuotient& quotient() const { return quotient_; }

  // eta(z) for z coprime to m.
  RootOfUnity eta(const QuadInt& z) const;

  // eta(O*), the image of the units.
  const std::vector<RootOfUnity>& unit_image() const { return unit_image_; }

  // [L:K] for L = L_eta * Qbar^{ker eps}, by enumerating (O/NO)*.
  std::int64_t relative_degree() const { return relative_degree_; }
  std::int64_t degree() const { return 2 * relative_degree_; }

  // psi((z)) = eta(z) * z as a complex number.
  std::complex<double> psi(const QuadInt& z) const;

 private:
  std::int64_t compute_relative_degree() const;

  ImagQuadField field_;
  QuadInt conductor_;
  std::int64_t level_;
  DirichletCharacter eps_;
  IdealQuotient quotient_;
  std::vector<RootOfUnity> eta_table_;  // by residue index
  std::vector<bool> eta_known_;
  std::vector<RootOfUnity> unit_image_;
  std::int64_t relative_degree_ = 1;
};

// Least k >= 1 with value^k in the subgroup unit_image. This is the order
// of the class of (alpha) in I(m)/P_{ker eta}(m) when value = eta(alpha).
std::int64_t ideal_class_order(const RootOfUnity& value,
                               std::span<const RootOfUnity> unit_image);

struct CmResidueDegree {
  std::int64_t ideal_degree;  // d(frak p)
  std::int64_t prime_degree;  // d(p)
  SplitType split;
};

// Residue degrees of a prime ideal over p and of p itself in L.
CmResidueDegree cm_residue_degree(const RayClassDescriptor& ray, std::uint64_t p);

// The associate of the norm generator of a split p lying in ker eta, when
// one exists; otherwise the norm generator itself.
QuadInt canonical_generator(const RayClassDescriptor& ray, std::uint64_t p);

}  // namespace cropped
