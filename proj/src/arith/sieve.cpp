#include "cropped/arith/sieve.hpp"

#include <algorithm>
#include <cmath>

#include "cropped/arith/modular.hpp"

namespace cropped {

std::vector<std::uint64_t> PrimeTable::coprime_to(std::uint64_t level) const {
  std::vector<std::uint64_t> out;
  out.reserve(primes_.size());
  for (auto p : primes_) {
    if (level % p != 0) out.push_back(p);
  }
  return out;
}

std::size_t PrimeTable::count_up_to(std::uint64_t x) const {
  return static_cast<std::size_t>(
      std::upper_bound(primes_.begin(), primes_.end(), x) - primes_.begin());
}

PrimeTable sieve_primes(std::uint64_t limit) {
  std::vector<std::uint64_t> primes;
  if (limit < 2) return {limit, std::move(primes)};

  // Base primes up to sqrt(limit) by a plain sieve.
  const std::uint64_t root = isqrt(limit);
  std::vector<bool> small(root + 1, true);
  std::vector<std::uint64_t> base;
  for (std::uint64_t i = 2; i <= root; ++i) {
    if (!small[i]) continue;
    base.push_back(i);
    for (std::uint64_t j = i * i; j <= root; j += i) small[j] = false;
  }

  const double estimate =
      static_cast<double>(limit) / std::max(1.0, std::log(static_cast<double>(limit)) - 1.1);
  primes.reserve(static_cast<std::size_t>(estimate) + 16);

  constexpr std::uint64_t kSegment = 1 << 18;
  std::vector<char> seg(kSegment);
  for (std::uint64_t lo = 2; lo <= limit; lo += kSegment) {
    const std::uint64_t hi = std::min(limit, lo + kSegment - 1);
    std::fill(seg.begin(), seg.begin() + static_cast<std::ptrdiff_t>(hi - lo + 1), 1);
    for (auto q : base) {
      if (q * q > hi) break;
      std::uint64_t start = std::max(q * q, (lo + q - 1) / q * q);
      for (std::uint64_t j = start; j <= hi; j += q) seg[j - lo] = 0;
    }
    for (std::uint64_t i = lo; i <= hi; ++i) {
      if (seg[i - lo]) primes.push_back(i);
    }
  }
  return {limit, std::move(primes)};
}

}  // namespace cropped
