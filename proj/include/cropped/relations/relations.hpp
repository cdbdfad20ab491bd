#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"

namespace cropped {

// 2^n1 = [L:Q] / n, n2 = ((-1)^n + 1) / 2.
std::pair<int, int> compute_n1_n2(std::int64_t L_deg, std::int64_t n);

struct InvariantRecord {
  std::int64_t E_deg = 1, F_deg = 1, L_deg = 1;
  int t = 1;
  std::int64_t n = 1;
  int n1 = 0, n2 = 0;
  bool cm = false;
  int M_deg = 1;

  // Fills n1, n2 and checks every invariant; ValidationError otherwise.
  static InvariantRecord make(std::int64_t E_deg, std::int64_t F_deg, std::int64_t L_deg, int t,
                              std::int64_t n, bool cm = false, int M_deg = 1);
  static InvariantRecord from_json(const nlohmann::json& j);
  nlohmann::json to_json() const;
  std::int64_t E_over_F() const { return E_deg / F_deg; }
  bool qm_surface() const;
};

bool weil_restriction_test(int t, std::int64_t E_deg, std::int64_t F_deg, std::int64_t L_deg);

struct RelationEntry {
  std::string quantity;  // e.g. "ord L(A_f/L)"
  std::int64_t value;
  std::string relation;  // which result produced it
  std::string anchor;    // the formula applied
};

struct RelationReport {
  InvariantRecord record;
  std::vector<RelationEntry> entries;
  std::vector<std::string> warnings;
  std::vector<std::string> assumptions;
  const RelationEntry* find(const std::string& quantity) const;
  nlohmann::json to_json() const;
};

// ord_L1_2LQ = ord L(f, S1, s)^{2[L:Q]} summed over the conjugates (the B_f crop);
// ord_fS1_2LQ = ord L(f, S1, s)^{2[L:Q]}. Odd totals raise ValidationError("inconsistent orders").
RelationReport order_relations_noncm(const InvariantRecord& rec, std::int64_t ord_L1_2LQ,
                                     std::int64_t ord_fS1_2LQ);

// ord_Ls_LK = ord L(s)^{[L:K]}. weil_hypothesis: A_f is the Weil restriction from M.
// galois_invariant: user assertion that ord L(f, s) is constant on the Galois orbit.
RelationReport order_relations_cm(const InvariantRecord& rec, std::int64_t ord_Ls_LK, bool weil_hypothesis,
                                  bool galois_invariant = false);

// QM surface: ord L(A_f/Q) = (ord L(f,S1,s)^4 + 1) / 2 and its inverse.
std::int64_t qm_surface_order(std::int64_t ord_fS1_4);
std::int64_t qm_required_crop_order(std::int64_t ord_AfQ);

// Gross curve over the Hilbert class field H: ord L(f,s) = ord L(f,S1,s)^{[H:Q]} / [H:Q].
int gross_order(std::int64_t p);
RelationReport gross_relations(std::int64_t p, std::int64_t h);

enum class Divisibility { ok, violation };
Divisibility divisibility_check(std::int64_t ord_total, std::int64_t E_deg);

}  // namespace cropped
