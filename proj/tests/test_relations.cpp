#include "cropped/error.hpp"
#include "cropped/relations/relations.hpp"
#include "doctest.h"

using namespace cropped;

TEST_CASE("compute_n1_n2 examples") {
  CHECK(compute_n1_n2(2, 1) == std::pair{1, 0});
  CHECK(compute_n1_n2(4, 2) == std::pair{1, 1});
  CHECK(compute_n1_n2(8, 1) == std::pair{3, 0});
  CHECK(compute_n1_n2(3, 3) == std::pair{0, 0});
  CHECK_THROWS_AS(compute_n1_n2(3, 1), ValidationError);
  CHECK_THROWS_AS(compute_n1_n2(4, 3), ValidationError);
  CHECK_THROWS_AS(compute_n1_n2(0, 1), ValidationError);
}

TEST_CASE("n1, n2 properties") {
  for (std::int64_t n = 1; n <= 12; ++n)
    for (int k = 0; k <= 6; ++k) {
      const auto [n1, n2] = compute_n1_n2(n << k, n);
      CHECK(n1 == k);
      CHECK(n2 == ((n % 2 == 0 ? 1 : -1) + 1) / 2);
    }
}

TEST_CASE("weil_restriction_test examples") {
  CHECK(weil_restriction_test(1, 4, 2, 2));
  CHECK_FALSE(weil_restriction_test(2, 4, 2, 2));
  CHECK_FALSE(weil_restriction_test(1, 4, 2, 4));
}

TEST_CASE("invariant records") {
  const auto r = InvariantRecord::make(4, 2, 2, 1, 1);
  CHECK(r.n1 == 1);
  CHECK(r.to_json()["dim_B_f"] == 2);
  CHECK(InvariantRecord::from_json(r.to_json()).E_deg == 4);
  CHECK_THROWS_AS(InvariantRecord::make(4, 3, 2, 1, 1), ValidationError);
  CHECK_THROWS_AS(InvariantRecord::make(8, 1, 4, 1, 1), ValidationError);  // [E:F] > [L:Q]
  CHECK_THROWS_AS(InvariantRecord::make(2, 1, 2, 3, 1), ValidationError);
  CHECK_THROWS_AS(InvariantRecord::make(2, 1, 6, 1, 1), ValidationError);
  CHECK_THROWS_AS(InvariantRecord::from_json({{"E_deg", 2}}), ValidationError);
  CHECK_NOTHROW(InvariantRecord::make(3, 3, 6, 1, 2, true));
}

TEST_CASE("QM surface relation") {
  const auto rec = InvariantRecord::make(2, 1, 2, 2, 1);
  REQUIRE(rec.qm_surface());
  CHECK(rec.n1 == 1);
  CHECK(rec.n2 == 0);
  for (std::int64_t x = -1; x <= 9; x += 2) {
    const auto rep = order_relations_noncm(rec, 2 * x, x);
    const auto* a = rep.find("ord L(A_f/Q)");
    REQUIRE(a);
    CHECK(a->value == (x + 1) / 2);
    CHECK(a->relation == "QM surfaces");
  }
  CHECK(qm_required_crop_order(0) == -1);
  CHECK(qm_required_crop_order(3) == 5);
  for (std::int64_t r = 0; r < 20; ++r) {
    const auto x = qm_required_crop_order(r);
    CHECK(x % 2 != 0);
    CHECK(x >= -1);
    CHECK(qm_surface_order(x) == r);
  }
  CHECK_THROWS_AS(qm_surface_order(2), ValidationError);
  CHECK_THROWS_AS(qm_surface_order(-3), ValidationError);
}

TEST_CASE("non-CM relations") {
  // n1 = n2 and only S1: ord L(f/L) is half the crop order.
  const auto rec = InvariantRecord::make(1, 1, 4, 1, 2);
  CHECK(rec.n1 == rec.n2);
  const auto rep = order_relations_noncm(rec, 4, 6);
  CHECK(rep.find("ord L(f/L)")->value == 3);
  CHECK_THROWS_AS(order_relations_noncm(rec, 4, 5), ValidationError);
  CHECK_THROWS_AS(order_relations_noncm(InvariantRecord::make(1, 1, 1, 1, 1, true), 0, 0), ValidationError);

  // A_f/L = [E:F] B_f/L / t on every valid record.
  for (std::int64_t E : {1, 2, 4, 8})
    for (std::int64_t F = 1; F <= E; F *= 2)
      for (int t : {1, 2})
        for (std::int64_t n : {1, 2, 4})
          for (int k = 0; k <= 3; ++k) {
            const std::int64_t L = n << k;
            if (E / F > L) continue;
            const auto r = InvariantRecord::make(E, F, L, t, n);
            for (std::int64_t x = -4; x <= 4; ++x) {
              RelationReport rep;
              try {
                rep = order_relations_noncm(r, x, x);
              } catch (const ValidationError&) {
                continue;
              }
              const auto B = rep.find("ord L(B_f/L)")->value, A = rep.find("ord L(A_f/L)")->value;
              CHECK(A * t == r.E_over_F() * B);
              if (weil_restriction_test(t, E, F, L)) CHECK(rep.find("ord L(A_f/Q)"));
            }
          }
}

TEST_CASE("CM relations") {
  const auto ell = InvariantRecord::make(1, 1, 2, 1, 1, true, 1);
  const auto rep = order_relations_cm(ell, 1, true);
  CHECK(rep.find("ord L(A_f/Q)")->value == 1);
  CHECK(rep.find("ord L(A_f/L)")->value == 1);
  CHECK(rep.warnings.empty());

  const auto two = InvariantRecord::make(2, 2, 4, 1, 1, true, 2);
  CHECK_THROWS_AS(order_relations_cm(two, 3, true), ValidationError);
  const auto ok = order_relations_cm(two, 2, true);
  CHECK(ok.find("ord L(A_f/Q)")->value == 1);
  CHECK(ok.warnings.size() == 1);  // 2 does not divide 1
  CHECK_FALSE(order_relations_cm(two, 3, false).find("ord L(A_f/Q)"));
  CHECK_THROWS_AS(order_relations_cm(InvariantRecord::make(1, 1, 2, 1, 1), 0, false), ValidationError);
  const auto cor = order_relations_cm(two, 8, false, true);
  CHECK(cor.find("ord L(f)")->value == 2);
  CHECK(cor.assumptions.size() == 1);
  CHECK(cor.to_json()["orders"].size() == 4);
}

TEST_CASE("Gross curves") {
  CHECK(gross_order(11) == 1);
  CHECK(gross_order(7) == 0);
  CHECK(gross_order(19) == 1);
  CHECK(gross_order(23) == 0);
  CHECK_THROWS_AS(gross_order(13), ValidationError);
  CHECK_THROWS_AS(gross_order(3), ValidationError);
  const auto r = gross_relations(23, 3);
  CHECK(r.record.L_deg == 6);
  CHECK(r.find("ord L(f)")->value == 0);
  const auto s = gross_relations(11, 1);
  CHECK(s.find("ord L(f,S1,s)^{[H:Q]}")->value == 2);
}

TEST_CASE("divisibility_check examples") {
  CHECK(divisibility_check(4, 2) == Divisibility::ok);
  CHECK(divisibility_check(3, 2) == Divisibility::violation);
  for (std::int64_t k = 1; k < 10; ++k) CHECK(divisibility_check(0, k) == Divisibility::ok);
}
