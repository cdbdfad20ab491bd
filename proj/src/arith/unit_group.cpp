#include "cropped/arith/unit_group.hpp"

#include <algorithm>
#include <numeric>

#include "cropped/arith/modular.hpp"
#include "cropped/error.hpp"

namespace cropped {
namespace {

// x = a mod m1, x = 1 mod m2, with gcd(m1, m2) = 1.
std::int64_t crt_with_one(std::int64_t a, std::int64_t m1, std::int64_t m2) {
  if (m2 == 1) return mod(a, m1);
  // x = 1 + m2 * k, need m2 * k = a - 1 (mod m1).
  const std::int64_t k = mod((a - 1) % m1 * inverse_mod(m2, m1), m1);
  return mod(1 + m2 * k, m1 * m2);
}

std::int64_t primitive_root_prime_power(std::int64_t q, int e) {
  const auto phi_q = static_cast<u64>(q - 1);
  const auto factors = factorize(phi_q);
  for (std::int64_t g = 2;; ++g) {
    bool ok = true;
    for (const auto& [r, _] : factors) {
      if (powmod(static_cast<u64>(g), phi_q / r, static_cast<u64>(q)) == 1) {
        ok = false;
        break;
      }
    }
    if (!ok) continue;
    // A primitive root mod q lifts to all q^e unless g^(q-1) = 1 mod q^2.
    if (e >= 2 && powmod(static_cast<u64>(g), phi_q, static_cast<u64>(q * q)) == 1) {
      continue;
    }
    return g;
  }
}

}  // namespace

UnitGroup::UnitGroup(std::int64_t modulus) : modulus_(modulus) {
  if (modulus <= 0) throw ValidationError("modulus must be positive");

  for (const auto& [q_u, e] : factorize(static_cast<u64>(modulus))) {
    const auto q = static_cast<std::int64_t>(q_u);
    std::int64_t qe = 1;
    for (int i = 0; i < e; ++i) qe *= q;
    const std::int64_t rest = modulus / qe;
    if (q == 2) {
      if (e == 1) continue;
      generators_.push_back(crt_with_one(qe - 1, qe, rest));
      gen_orders_.push_back(2);
      if (e >= 3) {
        generators_.push_back(crt_with_one(5, qe, rest));
        gen_orders_.push_back(qe / 4);
      }
    } else {
      const std::int64_t g = primitive_root_prime_power(q, e);
      generators_.push_back(crt_with_one(g, qe, rest));
      gen_orders_.push_back(qe / q * (q - 1));
    }
  }

  const std::size_t r = generators_.size();
  order_ = 1;
  exponent_ = 1;
  for (auto o : gen_orders_) {
    order_ *= o;
    exponent_ = std::lcm(exponent_, o);
  }

  unit_.assign(static_cast<std::size_t>(modulus), false);
  logs_.assign(static_cast<std::size_t>(modulus) * std::max<std::size_t>(r, 1), 0);
  elements_.reserve(static_cast<std::size_t>(order_));

  // Mixed-radix walk over all exponent vectors.
  std::vector<std::int32_t> exps(r, 0);
  for (std::int64_t count = 0; count < order_; ++count) {
    std::int64_t x = 1 % modulus;
    for (std::size_t i = 0; i < r; ++i) {
      x = static_cast<std::int64_t>(mulmod(
          static_cast<u64>(x),
          powmod(static_cast<u64>(generators_[i]), static_cast<u64>(exps[i]),
                 static_cast<u64>(modulus)),
          static_cast<u64>(modulus)));
    }
    unit_[static_cast<std::size_t>(x)] = true;
    std::copy(exps.begin(), exps.end(),
              logs_.begin() + static_cast<std::ptrdiff_t>(static_cast<std::size_t>(x) * r));
    elements_.push_back(x);
    for (std::size_t i = 0; i < r; ++i) {
      if (++exps[i] < gen_orders_[i]) break;
      exps[i] = 0;
    }
  }
  std::sort(elements_.begin(), elements_.end());
}

std::shared_ptr<const UnitGroup> UnitGroup::make(std::int64_t modulus) {
  return std::make_shared<const UnitGroup>(modulus);
}

std::span<const std::int32_t> UnitGroup::log(std::int64_t a) const {
  const auto x = static_cast<std::size_t>(mod(a, modulus_));
  if (!unit_[x]) return {};
  const std::size_t r = generators_.size();
  return {logs_.data() + x * r, r};
}

bool UnitGroup::is_unit(std::int64_t a) const {
  return unit_[static_cast<std::size_t>(mod(a, modulus_))];
}

ResidueSubgroup::ResidueSubgroup(std::int64_t modulus,
                                 std::vector<std::int64_t> elements)
    : modulus_(modulus), elements_(std::move(elements)) {
  for (auto& x : elements_) x = mod(x, modulus_);
  std::sort(elements_.begin(), elements_.end());
  elements_.erase(std::unique(elements_.begin(), elements_.end()), elements_.end());
  member_.assign(static_cast<std::size_t>(modulus_), false);
  for (auto x : elements_) member_[static_cast<std::size_t>(x)] = true;
}

ResidueSubgroup ResidueSubgroup::whole(const UnitGroup& g) {
  const auto el = g.elements();
  return {g.modulus(), {el.begin(), el.end()}};
}

bool ResidueSubgroup::contains(std::int64_t a) const {
  return member_[static_cast<std::size_t>(mod(a, modulus_))];
}

ResidueSubgroup ResidueSubgroup::intersect(const ResidueSubgroup& o) const {
  if (o.modulus_ != modulus_) {
    throw ValidationError("subgroup moduli differ");
  }
  std::vector<std::int64_t> common;
  for (auto x : elements_) {
    if (o.contains(x)) common.push_back(x);
  }
  return {modulus_, std::move(common)};
}

}  // namespace cropped
