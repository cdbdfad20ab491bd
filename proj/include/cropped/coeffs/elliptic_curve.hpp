#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>

namespace cropped {

// Long Weierstrass model y^2 + a1 xy + a3 y = x^3 + a2 x^2 + a4 x + a6.
// The conductor is supplied by the caller (or the built-in catalog); it is
// only used to exclude bad primes.
struct EllipticCurve {
  std::array<std::int64_t, 5> a{};  // a1, a2, a3, a4, a6
  std::uint64_t conductor = 0;
  std::optional<std::int64_t> cm_discriminant;
  std::string label;

  static EllipticCurve short_weierstrass(std::int64_t A, std::int64_t B, std::uint64_t conductor,
                                         std::optional<std::int64_t> cm = std::nullopt);

  // Discriminant of the model as a decimal string (may exceed 64 bits).
  std::string discriminant() const;
  bool good_reduction(std::uint64_t p) const;
  std::string equation() const;
};

// y^2 = x^3 - x, conductor 32, CM by Z[i].
EllipticCurve curve_32a();
// y^2 + y = x^3 - x^2 - 10x - 20, conductor 11.
EllipticCurve curve_11a();

// Lookup by label ("11a", "32a") or equation string such as "y2=x3-x",
// "y^2=x^3+2x-3" or "[0,-1,1,-10,-20]". Known models get their catalog
// conductor; unknown ones need conductor > 0 from the caller.
EllipticCurve parse_curve(const std::string& text, std::uint64_t conductor = 0,
                          std::optional<std::int64_t> cm = std::nullopt);

// a_p = p + 1 - #E(F_p) by enumerating x against a table of squares.
// Throws ExcludedPrimeError at bad primes.
std::int64_t ec_ap(const EllipticCurve& curve, std::uint64_t p);

}  // namespace cropped
