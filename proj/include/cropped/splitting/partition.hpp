#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "cropped/arith/root_of_unity.hpp"
#include "cropped/splitting/cyclotomic_field.hpp"
#include "cropped/splitting/ray_class.hpp"

namespace cropped {

// Per-prime record of a partition.
struct PartitionRow {
  std::uint64_t p;
  int degree;         // d(p)
  std::string label;  // S1, S2+, S2-, S2, S3
  int eps_sign;       // +1 / -1 when eps(p) is real, 0 otherwise
  std::optional<SplitType> split;  // CM partitions only
};

// Prime ideal of K over a rational prime, for the ideal-level sets.
struct IdealRecord {
  std::uint64_t p;
  int degree;  // d(frak p)
  bool inert;  // frak p = conj(frak p)
};

// Disjoint sets S1, S2, S3 of good primes up to a bound, with S2 further
// split by the sign of eps(p); for CM descriptors also the ideal-level sets.
struct PrimePartition {
  std::uint64_t bound = 0;
  std::int64_t level = 1;
  std::int64_t field_degree = 1;  // [L:Q]
  bool cm = false;
  std::vector<PartitionRow> rows;  // ascending p
  std::vector<std::uint64_t> s1, s2, s3, s2_plus, s2_minus;
  std::vector<IdealRecord> s1_ideals, s2_ideals, s3_ideals;

  // Fraction of good primes in each set.
  double density(const std::vector<std::uint64_t>& set) const;

  std::string to_csv() const;
  std::string to_json() const;
};

// Non-CM partition with S1 = {d(p)=1}, S2 = {d(p)=2}, S3 = {d(p)>=3}.
PrimePartition partition_primes(const CyclotomicSplittingField& field,
                                const DirichletCharacter& nebentypus,
                                std::uint64_t bound);

// CM partition: inert primes of degree 2 join S1; S2 keeps split primes of
// degree 2. Ideal-level sets are filled as well.
PrimePartition partition_primes(const RayClassDescriptor& ray, std::uint64_t bound);

// Partition from an explicit residue-degree function (ingested degree
// tables). When discriminant is set the CM convention applies.
PrimePartition partition_from_degrees(
    std::int64_t level, std::int64_t field_degree, std::uint64_t bound,
    const std::function<int(std::uint64_t)>& degree_of,
    const std::function<RootOfUnity(std::uint64_t)>& eps_of,
    std::optional<std::int64_t> discriminant);

}  // namespace cropped
