#include <algorithm>
#include <set>

#include "cropped/arith/dirichlet.hpp"
#include "cropped/arith/sieve.hpp"
#include "cropped/error.hpp"
#include "cropped/splitting/cyclotomic_field.hpp"
#include "cropped/splitting/partition.hpp"
#include "cropped/splitting/ray_class.hpp"
#include "doctest.h"

using namespace cropped;

namespace {

DirichletCharacter order_three_mod_7() {
  const std::pair<std::int64_t, RootOfUnity> a[] = {{3, RootOfUnity(1, 3)}};
  return DirichletCharacter::from_values(7, a);
}

RayClassDescriptor curve_32a_ray() {
  const std::pair<QuadInt, RootOfUnity> eta[] = {{{0, 1}, RootOfUnity(3, 4)}};
  return {ImagQuadField(-4), {2, 2}, eta, DirichletCharacter::trivial(32)};
}

bool associate(const ImagQuadField& K, QuadInt x, QuadInt y) {
  for (auto u : K.units())
    if (K.mul(u, x) == y) return true;
  return false;
}

}  // namespace

TEST_CASE("field_from_inner_twists examples") {
  const auto q = field_from_inner_twists(11, DirichletCharacter::trivial(11), {});
  CHECK(q.degree() == 1);
  CHECK(q.fixing_subgroup().size() == 10);
  CHECK(field_from_inner_twists(1, DirichletCharacter::trivial(1), {}).degree() == 1);

  const DirichletCharacter chi4[] = {DirichletCharacter::kronecker(-4)};
  const auto qi = field_from_inner_twists(4, DirichletCharacter::trivial(4), chi4);
  CHECK(qi.degree() == 2);
  CHECK(qi.fixing_subgroup() == ResidueSubgroup(4, {1}));

  const DirichletCharacter chi7[] = {order_three_mod_7()};
  const auto cubic = field_from_inner_twists(7, DirichletCharacter::trivial(7), chi7);
  CHECK(cubic.fixing_subgroup() == ResidueSubgroup(7, {1, 6}));
  CHECK(cubic.degree() == 3);

  CHECK_THROWS_AS(field_from_inner_twists(10, DirichletCharacter::trivial(10), chi7),
                  ValidationError);
}

TEST_CASE("residue_degree examples") {
  const auto q = CyclotomicSplittingField::rationals(11);
  for (std::uint64_t p : {2, 3, 5, 7, 13, 101}) CHECK(residue_degree(q, p) == 1);
  CHECK_THROWS_AS(residue_degree(q, 11), ExcludedPrimeError);

  const CyclotomicSplittingField qi(4, ResidueSubgroup(4, {1}));
  CHECK(residue_degree(qi, 5) == 1);
  CHECK(residue_degree(qi, 3) == 2);

  const CyclotomicSplittingField cubic(7, ResidueSubgroup(7, {1, 6}));
  CHECK(residue_degree(cubic, 2) == 3);
  CHECK(residue_degree(cubic, 13) == 1);
}

TEST_CASE("residue degrees divide the field degree and detect H") {
  const std::pair<std::int64_t, RootOfUnity> a16[] = {{5, RootOfUnity(1, 4)},
                                                      {15, RootOfUnity::one()}};
  const DirichletCharacter chi16[] = {DirichletCharacter::from_values(16, a16)};
  const auto f = field_from_inner_twists(16, DirichletCharacter::trivial(16), chi16);
  CHECK(f.degree() == 4);
  for (auto p : sieve_primes(5000).coprime_to(16)) {
    const int d = f.residue_degree(p);
    CHECK(f.degree() % d == 0);
    CHECK((d == 1) == f.fixing_subgroup().contains(static_cast<std::int64_t>(p % 16)));
  }
  const auto dens = f.degree_densities();
  CHECK(dens.at(1) == doctest::Approx(0.25));
  CHECK(dens.at(2) == doctest::Approx(0.25));
  CHECK(dens.at(4) == doctest::Approx(0.5));
}

TEST_CASE("split_type over Q(i)") {
  const ImagQuadField K(-4);
  CHECK(split_type(K, 5) == SplitType::split);
  CHECK(split_type(K, 7) == SplitType::inert);
  CHECK(split_type(K, 2) == SplitType::ramified);
  CHECK_THROWS_AS(ImagQuadField(-12), ValidationError);
}

TEST_CASE("norm_generator examples and norm equation") {
  const ImagQuadField K(-4);
  CHECK(associate(K, norm_generator(K, 5), {2, 1}));
  CHECK(associate(K, norm_generator(K, 13), {3, 2}));
  CHECK_THROWS_AS(norm_generator(K, 7), ValidationError);
  CHECK_THROWS_AS(norm_generator(ImagQuadField(-15), 2), IngestionOnlyError);

  const auto primes = sieve_primes(20000);
  for (std::int64_t D : {-3, -4, -7, -8, -11, -19, -43, -67, -163}) {
    const ImagQuadField F(D);
    int split = 0;
    for (auto p : primes.primes()) {
      if (F.split_type(p) != SplitType::split) continue;
      ++split;
      CHECK(F.norm(F.norm_generator(p)) == static_cast<std::int64_t>(p));
    }
    CHECK(split > 900);
  }
}

TEST_CASE("ray class descriptor for y^2 = x^3 - x") {
  const auto ray = curve_32a_ray();
  CHECK(ray.level() == 32);
  CHECK(ray.quotient().size() == 8);
  CHECK(ray.quotient().units().size() == 4);
  CHECK(ray.relative_degree() == 1);
  CHECK(ray.degree() == 2);

  auto d5 = cm_residue_degree(ray, 5);
  CHECK(d5.ideal_degree == 1);
  CHECK(d5.prime_degree == 1);
  auto d3 = cm_residue_degree(ray, 3);
  CHECK(d3.ideal_degree == 1);
  CHECK(d3.prime_degree == 2);
  CHECK_THROWS_AS(cm_residue_degree(ray, 2), ExcludedPrimeError);

  CHECK(canonical_generator(ray, 5) == QuadInt{-1, 2});
  CHECK(canonical_generator(ray, 13) == QuadInt{3, 2});
}

TEST_CASE("ray class descriptor validation") {
  const ImagQuadField K(-4);
  // eta trivial puts every unit in its kernel.
  const std::pair<QuadInt, RootOfUnity> triv[] = {{{0, 1}, RootOfUnity::one()}};
  CHECK_THROWS_AS(RayClassDescriptor(K, {2, 2}, triv, DirichletCharacter::trivial(32)),
                  ValidationError);
  // Wrong nebentypus: eps must equal eta * chi_{-4} on integers.
  const std::pair<QuadInt, RootOfUnity> eta[] = {{{0, 1}, RootOfUnity(3, 4)}};
  CHECK_THROWS_AS(RayClassDescriptor(K, {2, 2}, eta, DirichletCharacter::kronecker(-4)),
                  ValidationError);
  // i has order 4 but is assigned an order-3 value: inconsistent.
  const std::pair<QuadInt, RootOfUnity> bad[] = {{{0, 1}, RootOfUnity(1, 3)}};
  CHECK_THROWS_AS(RayClassDescriptor(K, {2, 2}, bad, DirichletCharacter::trivial(32)),
                  ValidationError);
}

TEST_CASE("ideal class order is a finite cyclic order") {
  // eta(alpha) of order 4, trivial unit image: the class has order 4.
  const RootOfUnity trivial_image[] = {RootOfUnity::one()};
  CHECK(ideal_class_order(RootOfUnity(1, 4), trivial_image) == 4);
  CHECK(ideal_class_order(RootOfUnity(3, 4), trivial_image) == 4);
  const RootOfUnity pm[] = {RootOfUnity::one(), RootOfUnity::minus_one()};
  CHECK(ideal_class_order(RootOfUnity(1, 4), pm) == 2);
  const RootOfUnity mu4[] = {RootOfUnity::one(), RootOfUnity(1, 4), RootOfUnity(1, 2),
                             RootOfUnity(3, 4)};
  CHECK(ideal_class_order(RootOfUnity(1, 4), mu4) == 1);
  // Brute-force oracle: order of the coset in mu_12 / image.
  for (std::int64_t k = 0; k < 12; ++k) {
    const RootOfUnity z(k, 12);
    std::int64_t expect = 1;
    while (z.pow(expect) != RootOfUnity::one() && z.pow(expect) != RootOfUnity::minus_one())
      ++expect;
    CHECK(ideal_class_order(z, pm) == expect);
  }
}

TEST_CASE("partition_primes examples") {
  const auto q = partition_primes(CyclotomicSplittingField::rationals(11),
                                  DirichletCharacter::trivial(11), 1000);
  CHECK(q.s1.size() == q.rows.size());
  CHECK(q.s2.empty());
  CHECK(q.s3.empty());

  const auto qi = partition_primes(CyclotomicSplittingField(4, ResidueSubgroup(4, {1})),
                                   DirichletCharacter::trivial(4), 1000);
  for (auto p : qi.s1) CHECK(p % 4 == 1);
  for (auto p : qi.s2) CHECK(p % 4 == 3);
  CHECK(qi.s3.empty());
  CHECK(qi.s2_plus == qi.s2);
  CHECK(qi.s1.size() + qi.s2.size() == sieve_primes(1000).size() - 1);

  const auto cm = partition_primes(curve_32a_ray(), 10000);
  CHECK(cm.cm);
  CHECK(cm.s1.size() == sieve_primes(10000).size() - 1);
  CHECK(cm.s2.empty());
  CHECK(cm.s3.empty());
  // Split primes give two degree-one ideals, inert primes one ideal of degree one.
  std::size_t split = 0, inert = 0;
  for (const auto& r : cm.rows) (*r.split == SplitType::split ? split : inert)++;
  CHECK(cm.s1_ideals.size() == 2 * split + inert);
}

TEST_CASE("partitions are disjoint and exhaustive; eps(p)^d(p) = 1") {
  const auto ray = curve_32a_ray();
  const auto cm = partition_primes(ray, 20000);
  for (const auto& r : cm.rows) {
    CHECK(ray.nebentypus()(static_cast<std::int64_t>(r.p))->pow(r.degree).is_one());
  }
  const DirichletCharacter chi7[] = {order_three_mod_7()};
  const auto part = partition_primes(
      field_from_inner_twists(7, DirichletCharacter::trivial(7), chi7),
      DirichletCharacter::trivial(7), 20000);
  std::set<std::uint64_t> all;
  for (auto* s : {&part.s1, &part.s2, &part.s3}) {
    for (auto p : *s) CHECK(all.insert(p).second);
  }
  const auto good = sieve_primes(20000).coprime_to(7);
  CHECK(all == std::set<std::uint64_t>(good.begin(), good.end()));
}

TEST_CASE("partition exports") {
  const auto qi = partition_primes(CyclotomicSplittingField(4, ResidueSubgroup(4, {1})),
                                   DirichletCharacter::trivial(4), 20);
  CHECK(qi.to_csv() ==
        "p,d,set,eps_sign\n3,2,S2+,1\n5,1,S1,1\n7,2,S2+,1\n11,2,S2+,1\n13,1,S1,1\n"
        "17,1,S1,1\n19,2,S2+,1\n");
  CHECK(qi.to_json().find("\"S2+\": 4") != std::string::npos);
}
