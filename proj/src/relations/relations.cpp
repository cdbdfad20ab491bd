#include "cropped/relations/relations.hpp"

#include <bit>

#include "cropped/error.hpp"

namespace cropped {

namespace {

std::int64_t half(std::int64_t twice) {
  if (twice % 2 != 0) throw ValidationError("inconsistent orders: " + std::to_string(twice) + "/2 is not an integer");
  return twice / 2;
}

const char* kNonCm = "non-CM order relation";
const char* kCm = "CM order relation";

}  // namespace

std::pair<int, int> compute_n1_n2(std::int64_t L_deg, std::int64_t n) {
  if (L_deg < 1 || n < 1) throw ValidationError("degrees must be positive");
  if (L_deg % n != 0) throw ValidationError("inconsistent record: n does not divide [L:Q]");
  const auto q = static_cast<std::uint64_t>(L_deg / n);
  if (!std::has_single_bit(q)) throw ValidationError("inconsistent record: [L:Q]/n is not a power of 2");
  return {std::countr_zero(q), n % 2 == 0 ? 1 : 0};
}

InvariantRecord InvariantRecord::make(std::int64_t E_deg, std::int64_t F_deg, std::int64_t L_deg, int t,
                                      std::int64_t n, bool cm, int M_deg) {
  if (E_deg < 1 || F_deg < 1) throw ValidationError("degrees must be positive");
  if (t != 1 && t != 2) throw ValidationError("t must be 1 or 2");
  if (M_deg != 1 && M_deg != 2) throw ValidationError("[M:Q] must be 1 or 2");
  if (E_deg % F_deg != 0) throw ValidationError("inconsistent record: [F:Q] does not divide [E:Q]");
  InvariantRecord r;
  r.E_deg = E_deg;
  r.F_deg = F_deg;
  r.L_deg = L_deg;
  r.t = t;
  r.n = n;
  r.cm = cm;
  r.M_deg = M_deg;
  // n1, n2 only enter the non-CM relations; CM fields need not satisfy the 2-power rule.
  if (!cm) std::tie(r.n1, r.n2) = compute_n1_n2(L_deg, n);
  else if (n < 1 || L_deg < 1) throw ValidationError("degrees must be positive");
  if (r.E_over_F() > L_deg) throw ValidationError("inconsistent record: [E:F] exceeds [L:Q]");
  return r;
}

InvariantRecord InvariantRecord::from_json(const nlohmann::json& j) {
  try {
    return make(j.at("E_deg").get<std::int64_t>(), j.at("F_deg").get<std::int64_t>(),
                j.at("L_deg").get<std::int64_t>(), j.value("t", 1), j.value("n", std::int64_t{1}),
                j.value("cm", false), j.value("M_deg", 1));
  } catch (const nlohmann::json::exception& e) {
    throw ValidationError(std::string("bad invariant record: ") + e.what());
  }
}

nlohmann::json InvariantRecord::to_json() const {
  return {{"E_deg", E_deg}, {"F_deg", F_deg}, {"L_deg", L_deg}, {"t", t}, {"n", n},
          {"n1", n1},       {"n2", n2},       {"cm", cm},       {"M_deg", M_deg}, {"dim_B_f", t * F_deg}};
}

bool InvariantRecord::qm_surface() const {
  return !cm && E_deg == 2 && F_deg == 1 && t == 2 && L_deg == 2 && n == 1;
}

bool weil_restriction_test(int t, std::int64_t E_deg, std::int64_t F_deg, std::int64_t L_deg) {
  return t == 1 && F_deg > 0 && E_deg % F_deg == 0 && L_deg == E_deg / F_deg;
}

const RelationEntry* RelationReport::find(const std::string& quantity) const {
  for (const auto& e : entries)
    if (e.quantity == quantity) return &e;
  return nullptr;
}

nlohmann::json RelationReport::to_json() const {
  nlohmann::json rows = nlohmann::json::array();
  for (const auto& e : entries)
    rows.push_back({{"quantity", e.quantity}, {"value", e.value}, {"relation", e.relation}, {"anchor", e.anchor}});
  return {{"schema", "cropped.relations/1"}, {"record", record.to_json()}, {"orders", rows},
          {"warnings", warnings},          {"assumptions", assumptions}};
}

RelationReport order_relations_noncm(const InvariantRecord& rec, std::int64_t ord_L1_2LQ, std::int64_t ord_fS1_2LQ) {
  if (rec.cm) throw ValidationError("record is flagged CM");
  RelationReport r{rec, {}, {}, {}};
  const std::int64_t d = rec.n1 - rec.n2;
  r.entries.push_back({"ord L(f/L)", half(ord_fS1_2LQ + d), kNonCm, "(ord L(f,S1,s)^{2[L:Q]} + n1 - n2)/2"});
  r.entries.push_back(
      {"ord L(B_f/L)", half(rec.t * (ord_L1_2LQ + d * rec.F_deg)), kNonCm, "t/2 (ord L1 + (n1 - n2)[F:Q])"});
  r.entries.push_back({"ord L(A_f/L)", half(rec.E_over_F() * ord_L1_2LQ + d * rec.E_deg), kNonCm,
                       "[E:F]/2 ord L1 + (n1 - n2)[E:Q]/2"});
  if (weil_restriction_test(rec.t, rec.E_deg, rec.F_deg, rec.L_deg))
    r.entries.push_back(
        {"ord L(A_f/Q)", half(ord_L1_2LQ + d * rec.F_deg), kNonCm, "(ord L1^{2[E:F]} + (n1 - n2)[F:Q])/2"});
  if (rec.qm_surface())
    r.entries.push_back({"ord L(A_f/Q)", qm_surface_order(ord_fS1_2LQ), "QM surfaces", "(ord L(f,S1,s)^4 + 1)/2"});
  if (const auto* a = r.find("ord L(A_f/Q)"); a && divisibility_check(a->value, rec.E_deg) == Divisibility::violation)
    r.warnings.push_back("[E:Q] = " + std::to_string(rec.E_deg) + " does not divide ord L(A_f/Q) = " +
                         std::to_string(a->value));
  return r;
}

RelationReport order_relations_cm(const InvariantRecord& rec, std::int64_t ord_Ls_LK, bool weil_hypothesis,
                                  bool galois_invariant) {
  if (!rec.cm) throw ValidationError("record is not flagged CM");
  RelationReport r{rec, {}, {}, {}};
  r.entries.push_back({"ord L(f/L)", ord_Ls_LK, kCm, "ord L(s)^{[L:K]}"});
  r.entries.push_back({"ord L(B_f/L)", ord_Ls_LK, kCm, "ord L(s)^{[L:K]}"});
  r.entries.push_back({"ord L(A_f/L)", rec.E_deg * ord_Ls_LK, kCm, "[E:Q] ord L(s)^{[L:K]}"});
  if (weil_hypothesis) {
    r.assumptions.push_back("A_f is the Weil restriction of an abelian variety over M, [M:Q] = " +
                            std::to_string(rec.M_deg));
    if (ord_Ls_LK % rec.M_deg != 0)
      throw ValidationError("inconsistent orders: ord L(s)^{[L:K]} not divisible by [M:Q]");
    const auto v = ord_Ls_LK / rec.M_deg;
    r.entries.push_back({"ord L(A_f/Q)", v, kCm, "ord L(s)^{[L:K]} / [M:Q]"});
    if (divisibility_check(v, rec.E_deg) == Divisibility::violation)
      r.warnings.push_back("[E:Q] = " + std::to_string(rec.E_deg) + " does not divide ord L(A_f/Q) = " +
                           std::to_string(v));
  }
  if (galois_invariant) {
    r.assumptions.push_back("ord L(f,s) is invariant under Galois conjugation (asserted, not derived)");
    if (ord_Ls_LK % rec.L_deg != 0)
      throw ValidationError("inconsistent orders: ord L(f,S1,s)^{[L:Q]} not divisible by [L:Q]");
    r.entries.push_back({"ord L(f)", ord_Ls_LK / rec.L_deg, "CM crop relation", "ord L(f,S1,s)^{[L:Q]} / [L:Q]"});
  }
  return r;
}

std::int64_t qm_surface_order(std::int64_t ord_fS1_4) {
  if (ord_fS1_4 < -1) throw ValidationError("inconsistent orders: ord L(f,S1,s)^4 below -1");
  return half(ord_fS1_4 + 1);
}

std::int64_t qm_required_crop_order(std::int64_t ord_AfQ) {
  if (ord_AfQ < 0) throw ValidationError("order of L(A_f/Q) at s = 1 must be non-negative");
  return 2 * ord_AfQ - 1;
}

int gross_order(std::int64_t p) {
  if (p <= 3 || p % 4 != 3) throw ValidationError("Gross curves need p = 3 mod 4, p > 3");
  return p % 8 == 3 ? 1 : 0;
}

RelationReport gross_relations(std::int64_t p, std::int64_t h) {
  if (h < 1) throw ValidationError("class number must be positive");
  const int ord = gross_order(p);
  // E = Q(values of psi) has degree h; L = H has degree 2h; the character is odd.
  RelationReport r{InvariantRecord::make(h, h, 2 * h, 1, 2, true, 1), {}, {}, {}};
  const std::int64_t HQ = 2 * h;
  r.entries.push_back({"ord L(f)", ord, "Gross curves", "0 for p = 7 mod 8, 1 for p = 3 mod 8"});
  r.entries.push_back({"ord L(f,S1,s)^{[H:Q]}", HQ * ord, "Gross curves", "[H:Q] ord L(f,s)"});
  r.assumptions.push_back("partition data for H comes from d-override ingestion");
  return r;
}

Divisibility divisibility_check(std::int64_t ord_total, std::int64_t E_deg) {
  if (E_deg < 1) throw ValidationError("[E:Q] must be positive");
  return ord_total % E_deg == 0 ? Divisibility::ok : Divisibility::violation;
}

}  // namespace cropped
