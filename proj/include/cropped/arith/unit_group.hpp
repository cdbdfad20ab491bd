#pragma once

#include <cstdint>
#include <memory>
#include <span>
#include <vector>

namespace cropped {

// Explicit decomposition of (Z/MZ)* as a product of cyclic groups, built by
// CRT over the prime-power factors of M. Every unit carries its exponent
// vector with respect to the generators.
class UnitGroup {
 public:
  explicit UnitGroup(std::int64_t modulus);

  static std::shared_ptr<const UnitGroup> make(std::int64_t modulus);

  std::int64_t modulus() const { return modulus_; }
  std::int64_t order() const { return order_; }

  std::span<const std::int64_t> generators() const { return generators_; }
  std::span<const std::int64_t> generator_orders() const { return gen_orders_; }

  // Exponent vector of the unit a (reduced mod M). Empty span for non-units.
  std::span<const std::int32_t> log(std::int64_t a) const;

  bool is_unit(std::int64_t a) const;

  // Units in ascending order.
  std::span<const std::int64_t> elements() const { return elements_; }

  // Exponent of the group (lcm of the generator orders).
  std::int64_t exponent() const { return exponent_; }

 private:
  std::int64_t modulus_;
  std::int64_t order_ = 1;
  std::int64_t exponent_ = 1;
  std::vector<std::int64_t> generators_;
  std::vector<std::int64_t> gen_orders_;
  std::vector<std::int64_t> elements_;
  // Row-major exponent table, one row of size generators_.size() per residue;
  // rows of non-units are unused.
  std::vector<std::int32_t> logs_;
  std::vector<bool> unit_;
};

// A subgroup of (Z/MZ)* given by its explicit element list.
class ResidueSubgroup {
 public:
  ResidueSubgroup(std::int64_t modulus, std::vector<std::int64_t> elements);

  static ResidueSubgroup whole(const UnitGroup& g);

  std::int64_t modulus() const { return modulus_; }
  std::span<const std::int64_t> elements() const { return elements_; }
  std::size_t size() const { return elements_.size(); }
  bool contains(std::int64_t a) const;

  ResidueSubgroup intersect(const ResidueSubgroup& o) const;

  friend bool operator==(const ResidueSubgroup& a, const ResidueSubgroup& b) {
    return a.modulus_ == b.modulus_ && a.elements_ == b.elements_;
  }

 private:
  std::int64_t modulus_;
  std::vector<std::int64_t> elements_;  // sorted, deduplicated
  std::vector<bool> member_;
};

}  // namespace cropped
