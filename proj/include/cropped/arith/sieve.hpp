#pragma once

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

namespace cropped {

// Ascending primes up to a bound, optionally with primes dividing a level
// marked as excluded.
class PrimeTable {
 public:
  PrimeTable() = default;
  PrimeTable(std::uint64_t bound, std::vector<std::uint64_t> primes)
      : bound_(bound), primes_(std::move(primes)) {}

  std::uint64_t bound() const { return bound_; }
  const std::vector<std::uint64_t>& primes() const& { return primes_; }
  // Temporaries hand over their storage so range-for over sieve_primes(n).primes() is safe.
  std::vector<std::uint64_t> primes() && { return std::move(primes_); }
  std::size_t size() const { return primes_.size(); }
  bool empty() const { return primes_.empty(); }

  // Primes not dividing level, ascending (the set P of good primes).
  std::vector<std::uint64_t> coprime_to(std::uint64_t level) const;

  // Number of primes <= x.
  std::size_t count_up_to(std::uint64_t x) const;

 private:
  std::uint64_t bound_ = 0;
  std::vector<std::uint64_t> primes_;
};

// Segmented sieve of Eratosthenes; all primes <= limit.
PrimeTable sieve_primes(std::uint64_t limit);

}  // namespace cropped
