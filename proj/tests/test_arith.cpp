#include <algorithm>
#include <numeric>

#include "cropped/arith/dirichlet.hpp"
#include "cropped/arith/modular.hpp"
#include "cropped/arith/sieve.hpp"
#include "cropped/error.hpp"
#include "doctest.h"

using namespace cropped;

namespace {

bool trial_division_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

DirichletCharacter order_three_mod_7() {
  const std::pair<std::int64_t, RootOfUnity> a[] = {{3, RootOfUnity(1, 3)}};
  return DirichletCharacter::from_values(7, a);
}

}  // namespace

TEST_CASE("sieve_primes small tables") {
  auto t = sieve_primes(10);
  CHECK(std::vector<std::uint64_t>(t.primes().begin(), t.primes().end()) ==
        std::vector<std::uint64_t>{2, 3, 5, 7});
  CHECK(sieve_primes(1).empty());
  CHECK(sieve_primes(0).empty());
  CHECK(sieve_primes(2).size() == 1);
}

TEST_CASE("sieve_primes count at one million") {
  auto t = sieve_primes(1'000'000);
  CHECK(t.size() == 78498);
  // Independent check on a sample window, including segment boundaries.
  const auto ps = t.primes();
  for (std::uint64_t n = 262'000; n < 263'000; ++n) {
    const bool listed = std::binary_search(ps.begin(), ps.end(), n);
    CHECK(listed == trial_division_prime(n));
  }
  CHECK(t.count_up_to(100) == 25);
  CHECK(t.coprime_to(11).size() == 78497);
}

TEST_CASE("multiplicative_order") {
  CHECK(multiplicative_order(3, 4) == 2);
  CHECK(multiplicative_order(1, 9) == 1);
  CHECK(multiplicative_order(2, 7) == 3);
  CHECK_THROWS_AS(multiplicative_order(2, 4), NotAUnitError);
  for (std::int64_t m = 2; m < 60; ++m) {
    const auto phi = static_cast<std::int64_t>(euler_phi(static_cast<std::uint64_t>(m)));
    for (std::int64_t a = 1; a < m; ++a) {
      if (std::gcd(a, m) != 1) continue;
      CHECK(phi % multiplicative_order(a, m) == 0);
    }
  }
}

TEST_CASE("unit group decomposition covers every unit once") {
  for (std::int64_t m : {1, 2, 4, 7, 8, 16, 32, 44, 45, 176, 360}) {
    UnitGroup g(m);
    CHECK(g.order() == static_cast<std::int64_t>(euler_phi(static_cast<std::uint64_t>(m))));
    CHECK(static_cast<std::int64_t>(g.elements().size()) == g.order());
    for (auto a : g.elements()) {
      const auto lg = g.log(a);
      std::int64_t x = 1 % m;
      for (std::size_t i = 0; i < lg.size(); ++i)
        x = static_cast<std::int64_t>(
            mulmod(static_cast<u64>(x),
                   powmod(static_cast<u64>(g.generators()[i]), static_cast<u64>(lg[i]),
                          static_cast<u64>(m)),
                   static_cast<u64>(m)));
      CHECK(x == a);
    }
  }
}

TEST_CASE("char_eval examples") {
  auto chi4 = DirichletCharacter::kronecker(-4);
  CHECK(*chi4(3) == RootOfUnity(1, 2));
  CHECK(!chi4(2).has_value());
  // Legendre symbol mod 5: squares are {1, 4}.
  auto leg5 = DirichletCharacter::kronecker(5);
  CHECK(*leg5(2) == RootOfUnity::minus_one());
  CHECK(*leg5(4) == RootOfUnity::one());
  for (auto q : {0, 1, 2, 3, 4}) {
    if (q == 0) continue;
    CHECK(*leg5(q * q) == RootOfUnity::one());
  }
}

TEST_CASE("char_order and char_kernel") {
  auto triv = DirichletCharacter::trivial(1);
  CHECK(char_order(triv) == 1);
  CHECK(char_kernel(triv).size() == 1);

  auto chi4 = DirichletCharacter::kronecker(-4);
  CHECK(char_order(chi4) == 2);
  CHECK(char_kernel(chi4) == ResidueSubgroup(4, {1}));

  auto chi7 = order_three_mod_7();
  CHECK(char_order(chi7) == 3);
  // Enumerate: 3 -> w, 2 = 3^2 -> w^2, 6 = 3^3 -> 1, 4 = 3^4 -> w, 5 = 3^5 -> w^2.
  CHECK(char_kernel(chi7) == ResidueSubgroup(7, {1, 6}));
}

TEST_CASE("character multiplicativity is exact") {
  std::vector<DirichletCharacter> chars{
      DirichletCharacter::kronecker(-4), DirichletCharacter::kronecker(5),
      DirichletCharacter::kronecker(-3), order_three_mod_7()};
  const std::pair<std::int64_t, RootOfUnity> a16[] = {{5, RootOfUnity(1, 4)},
                                                      {15, RootOfUnity::one()}};
  chars.push_back(DirichletCharacter::from_values(16, a16));
  for (const auto& chi : chars) {
    for (std::int64_t a = 1; a <= 1000; a += 7) {
      for (std::int64_t b = 1; b <= 1000; b += 11) {
        const auto va = chi(a), vb = chi(b), vab = chi(a * b);
        if (va && vb) {
          REQUIRE(vab.has_value());
          CHECK(*vab == *va * *vb);
        } else {
          CHECK(!vab.has_value());
        }
      }
      if (auto v = chi(a)) CHECK(v->pow(chi.order()).is_one());
    }
  }
}

TEST_CASE("from_values rejects inconsistent assignments") {
  const std::pair<std::int64_t, RootOfUnity> bad[] = {{3, RootOfUnity(1, 4)}};
  // 3 has order 2 mod 4, so 3 -> i is not a homomorphism.
  CHECK_THROWS_AS(DirichletCharacter::from_values(4, bad), ValidationError);
  const std::pair<std::int64_t, RootOfUnity> partial[] = {{15, RootOfUnity::minus_one()}};
  CHECK_THROWS_AS(DirichletCharacter::from_values(16, partial), ValidationError);
}

TEST_CASE("conductor, extension and enumeration") {
  auto chi4 = DirichletCharacter::kronecker(-4);
  auto ext = chi4.extend_to(44);
  CHECK(ext.conductor() == 4);
  CHECK(*ext(3) == RootOfUnity::minus_one());
  CHECK(!ext(11).has_value());
  CHECK(DirichletCharacter::all(44).size() == 20);
  CHECK(DirichletCharacter::all(44).front().is_trivial());
  CHECK(DirichletCharacter::trivial(32).conductor() == 1);
}

TEST_CASE("root of unity arithmetic") {
  RootOfUnity i(1, 4);
  CHECK(i * i == RootOfUnity::minus_one());
  CHECK(i.pow(4).is_one());
  CHECK(i.inverse() == RootOfUnity(3, 4));
  CHECK(RootOfUnity(2, 4) == RootOfUnity(1, 2));
  CHECK(RootOfUnity(-1, 3) == RootOfUnity(2, 3));
  CHECK(RootOfUnity(1, 2).real_sign() == -1);
  CHECK(!i.real_sign().has_value());
}

TEST_CASE("kronecker and square roots") {
  CHECK(kronecker(-4, 5) == 1);
  CHECK(kronecker(-4, 7) == -1);
  CHECK(kronecker(-4, 2) == 0);
  CHECK(kronecker(-7, 2) == 1);
  CHECK(kronecker(-3, 2) == -1);
  for (std::uint64_t p : {13ULL, 17ULL, 97ULL, 1'000'003ULL}) {
    for (std::uint64_t a : {2ULL, 3ULL, 5ULL, 10ULL}) {
      if (powmod(a, (p - 1) / 2, p) != 1) continue;
      const auto r = sqrt_mod_prime(a, p);
      CHECK(mulmod(r, r, p) == a % p);
    }
  }
}
