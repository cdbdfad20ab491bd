#pragma once

#include <cstdint>
#include <utility>
#include <vector>

namespace cropped {

using u64 = std::uint64_t;
using i64 = std::int64_t;

inline u64 mulmod(u64 a, u64 b, u64 m) {
  return static_cast<u64>(static_cast<unsigned __int128>(a) * b % m);
}

u64 powmod(u64 base, u64 exp, u64 m);

// Non-negative residue of a mod m.
inline i64 mod(i64 a, i64 m) {
  i64 r = a % m;
  return r < 0 ? r + m : r;
}

// Inverse of a mod m; throws NotAUnitError when gcd(a, m) != 1.
i64 inverse_mod(i64 a, i64 m);

// Least k >= 1 with a^k = 1 (mod m). Throws NotAUnitError for non-units.
i64 multiplicative_order(i64 a, i64 m);

// Prime factorization by trial division, ascending (prime, exponent) pairs.
std::vector<std::pair<u64, int>> factorize(u64 n);

u64 euler_phi(u64 n);

bool is_prime(u64 n);

// Kronecker symbol (a/n) for n > 0.
int kronecker(i64 a, i64 n);

// Square root of a modulo an odd prime p (Tonelli-Shanks). Requires a to be
// a quadratic residue.
u64 sqrt_mod_prime(u64 a, u64 p);

// Integer square root: largest r with r*r <= n.
u64 isqrt(u64 n);

}  // namespace cropped
