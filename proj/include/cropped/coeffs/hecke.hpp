#pragma once

#include <complex>
#include <cstdint>
#include <optional>

#include "cropped/splitting/ray_class.hpp"

namespace cropped {

// Grossencharacter psi((alpha)) = eta(alpha) alpha on a class-number-one
// field. The generator of each split prime ideal is pinned either by
// alpha = 1 mod `normalization` or, when that is absent, by eta(alpha) = 1.
struct HeckeCharacterSource {
  RayClassDescriptor ray;
  std::optional<QuadInt> normalization;

  QuadInt normalized_generator(std::uint64_t p) const;
};

struct HeckeValue {
  SplitType split;
  // Exact values when eta(alpha) is a root of unity of K.
  std::optional<QuadInt> psi, psi_bar;
  std::complex<double> psi_c, psi_bar_c;
  std::complex<double> ap;
  std::optional<std::int64_t> ap_exact;
  RootOfUnity eps;
};

// Split p: a_p = psi(p) + psi(pbar). Inert p: a_p = 0.
HeckeValue hecke_ap(const HeckeCharacterSource& source, std::uint64_t p);

// The character attached to y^2 = x^3 - x: K = Q(i), m = (1+i)^3,
// eta(i) = -i, trivial nebentypus mod 32.
HeckeCharacterSource hecke_32a();

}  // namespace cropped
