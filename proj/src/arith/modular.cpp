#include "cropped/arith/modular.hpp"

#include <cmath>
#include <numeric>
#include <stdexcept>

#include "cropped/error.hpp"

namespace cropped {

u64 powmod(u64 base, u64 exp, u64 m) {
  if (m == 1) return 0;
  u64 result = 1;
  base %= m;
  while (exp > 0) {
    if (exp & 1) result = mulmod(result, base, m);
    base = mulmod(base, base, m);
    exp >>= 1;
  }
  return result;
}

i64 inverse_mod(i64 a, i64 m) {
  i64 old_r = mod(a, m), r = m;
  i64 old_s = 1, s = 0;
  while (r != 0) {
    const i64 q = old_r / r;
    old_r -= q * r;
    std::swap(old_r, r);
    old_s -= q * s;
    std::swap(old_s, s);
  }
  if (old_r != 1 && m != 1) {
    throw NotAUnitError("not a unit: " + std::to_string(a) + " mod " +
                        std::to_string(m));
  }
  return mod(old_s, m);
}

i64 multiplicative_order(i64 a, i64 m) {
  if (m <= 0) throw ValidationError("modulus must be positive");
  a = mod(a, m);
  if (std::gcd(a, m) != 1) {
    throw NotAUnitError("not a unit: " + std::to_string(a) + " mod " +
                        std::to_string(m));
  }
  if (m == 1) return 1;
  // The order divides phi(m); strip prime factors from phi(m).
  u64 order = euler_phi(static_cast<u64>(m));
  for (const auto& [q, e] : factorize(order)) {
    for (int i = 0; i < e; ++i) {
      if (powmod(static_cast<u64>(a), order / q, static_cast<u64>(m)) == 1) {
        order /= q;
      } else {
        break;
      }
    }
  }
  return static_cast<i64>(order);
}

std::vector<std::pair<u64, int>> factorize(u64 n) {
  std::vector<std::pair<u64, int>> out;
  for (u64 q = 2; q * q <= n; q += (q == 2 ? 1 : 2)) {
    if (n % q != 0) continue;
    int e = 0;
    while (n % q == 0) {
      n /= q;
      ++e;
    }
    out.emplace_back(q, e);
  }
  if (n > 1) out.emplace_back(n, 1);
  return out;
}

u64 euler_phi(u64 n) {
  u64 phi = n;
  for (const auto& [q, e] : factorize(n)) phi = phi / q * (q - 1);
  return phi;
}

bool is_prime(u64 n) {
  if (n < 2) return false;
  for (u64 q = 2; q * q <= n; ++q) {
    if (n % q == 0) return false;
  }
  return true;
}

int kronecker(i64 a, i64 n) {
  if (n <= 0) throw ValidationError("kronecker symbol needs n > 0");
  int result = 1;
  while (n % 2 == 0) {
    n /= 2;
    const i64 r = mod(a, 8);
    if (r == 0 || r == 2 || r == 4 || r == 6) return 0;
    if (r == 3 || r == 5) result = -result;
  }
  // Jacobi symbol (a/n) for odd n.
  a = mod(a, n);
  while (a != 0) {
    while (a % 2 == 0) {
      a /= 2;
      const i64 r = n % 8;
      if (r == 3 || r == 5) result = -result;
    }
    std::swap(a, n);
    if (a % 4 == 3 && n % 4 == 3) result = -result;
    a %= n;
  }
  return n == 1 ? result : 0;
}

u64 sqrt_mod_prime(u64 a, u64 p) {
  a %= p;
  if (p == 2 || a == 0) return a;
  if (powmod(a, (p - 1) / 2, p) != 1) {
    throw ValidationError("not a quadratic residue");
  }
  if (p % 4 == 3) return powmod(a, (p + 1) / 4, p);
  u64 q = p - 1;
  int s = 0;
  while (q % 2 == 0) {
    q /= 2;
    ++s;
  }
  u64 z = 2;
  while (powmod(z, (p - 1) / 2, p) != p - 1) ++z;
  u64 c = powmod(z, q, p);
  u64 r = powmod(a, (q + 1) / 2, p);
  u64 t = powmod(a, q, p);
  int m = s;
  while (t != 1) {
    int i = 0;
    u64 tt = t;
    while (tt != 1) {
      tt = mulmod(tt, tt, p);
      ++i;
    }
    u64 b = c;
    for (int j = 0; j < m - i - 1; ++j) b = mulmod(b, b, p);
    r = mulmod(r, b, p);
    c = mulmod(b, b, p);
    t = mulmod(t, c, p);
    m = i;
  }
  return r;
}

u64 isqrt(u64 n) {
  u64 r = static_cast<u64>(std::sqrt(static_cast<long double>(n)));
  while (r * r > n) --r;
  while ((r + 1) * (r + 1) <= n) ++r;
  return r;
}

}  // namespace cropped
