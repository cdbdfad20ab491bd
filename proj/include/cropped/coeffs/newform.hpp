#pragma once

#include <complex>
#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "cropped/coeffs/elliptic_curve.hpp"
#include "cropped/coeffs/hecke.hpp"
#include "cropped/coeffs/orbit.hpp"
#include "cropped/splitting/partition.hpp"

namespace cropped {

struct CoefficientRecord {
  std::uint64_t p = 0;
  std::vector<std::complex<double>> ap;  // per embedding
  RootOfUnity eps;
  std::optional<std::int64_t> ap_exact;  // rational a_p when known exactly
  const char* source = "";
};

// A weight-2 newform together with the source of its coefficients.
class Newform {
 public:
  explicit Newform(EllipticCurve curve);
  explicit Newform(HeckeCharacterSource hecke);
  explicit Newform(OrbitData orbit);

  std::int64_t level() const { return level_; }
  const DirichletCharacter& nebentypus() const { return eps_; }
  int embedding_count() const;
  std::optional<std::int64_t> cm_discriminant() const;
  std::string describe() const;

  const EllipticCurve* curve() const { return std::get_if<EllipticCurve>(&source_); }
  const HeckeCharacterSource* hecke() const { return std::get_if<HeckeCharacterSource>(&source_); }
  const OrbitData* orbit() const { return std::get_if<OrbitData>(&source_); }

  // p must be a good prime; orbit sources must store a row for it.
  CoefficientRecord record(std::uint64_t p) const;
  // All good primes p <= bound (orbits: those stored).
  std::vector<CoefficientRecord> records(std::uint64_t bound) const;
  // Largest bound for which records() is complete.
  std::uint64_t coverage() const;

  // Partition of the good primes up to bound by residue degree in L.
  PrimePartition partition(std::uint64_t bound) const;

 private:
  std::variant<EllipticCurve, HeckeCharacterSource, OrbitData> source_;
  std::int64_t level_;
  DirichletCharacter eps_;
};

}  // namespace cropped
