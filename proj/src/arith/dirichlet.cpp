#include "cropped/arith/dirichlet.hpp"

#include <numeric>
#include <sstream>
#include <unordered_map>

#include "cropped/arith/modular.hpp"
#include "cropped/error.hpp"

namespace cropped {

DirichletCharacter::DirichletCharacter(std::shared_ptr<const UnitGroup> group,
                                       std::vector<RootOfUnity> generator_values)
    : group_(std::move(group)), gen_values_(std::move(generator_values)) {
  const auto orders = group_->generator_orders();
  if (gen_values_.size() != orders.size()) {
    throw ValidationError("character needs one value per generator");
  }
  for (std::size_t i = 0; i < orders.size(); ++i) {
    if (orders[i] % gen_values_[i].order() != 0) {
      throw ValidationError("character value order does not divide generator order");
    }
  }
  build_table();
}

void DirichletCharacter::build_table() {
  const std::int64_t m = group_->modulus();
  table_.assign(static_cast<std::size_t>(m), RootOfUnity::one());
  order_ = 1;
  for (const auto& v : gen_values_) order_ = std::lcm(order_, v.order());
  for (auto a : group_->elements()) {
    const auto lg = group_->log(a);
    RootOfUnity v;
    for (std::size_t i = 0; i < lg.size(); ++i) v *= gen_values_[i].pow(lg[i]);
    table_[static_cast<std::size_t>(a)] = v;
  }
}

DirichletCharacter DirichletCharacter::trivial(std::int64_t modulus) {
  auto g = UnitGroup::make(modulus);
  std::vector<RootOfUnity> vals(g->generators().size());
  return {std::move(g), std::move(vals)};
}

DirichletCharacter DirichletCharacter::from_values(
    std::int64_t modulus,
    std::span<const std::pair<std::int64_t, RootOfUnity>> assignment) {
  auto g = UnitGroup::make(modulus);
  std::unordered_map<std::int64_t, RootOfUnity> known;
  std::vector<std::int64_t> frontier{1 % modulus};
  known.emplace(1 % modulus, RootOfUnity::one());
  for (const auto& [r, v] : assignment) {
    if (!g->is_unit(r)) {
      throw ValidationError("character assignment on a non-unit residue " +
                            std::to_string(r));
    }
  }
  while (!frontier.empty()) {
    const std::int64_t x = frontier.back();
    frontier.pop_back();
    const RootOfUnity vx = known.at(x);
    for (const auto& [r, v] : assignment) {
      const std::int64_t y = mod(x * mod(r, modulus), modulus);
      const RootOfUnity vy = vx * v;
      auto [it, inserted] = known.emplace(y, vy);
      if (inserted) {
        frontier.push_back(y);
      } else if (it->second != vy) {
        throw ValidationError("character values are inconsistent on residue " +
                              std::to_string(y) + " mod " + std::to_string(modulus));
      }
    }
  }
  if (static_cast<std::int64_t>(known.size()) != g->order()) {
    throw ValidationError("character residues do not generate (Z/" +
                          std::to_string(modulus) + "Z)*");
  }
  std::vector<RootOfUnity> vals;
  for (auto gen : g->generators()) vals.push_back(known.at(gen));
  return {std::move(g), std::move(vals)};
}

DirichletCharacter DirichletCharacter::kronecker(std::int64_t discriminant) {
  const std::int64_t m = discriminant < 0 ? -discriminant : discriminant;
  auto g = UnitGroup::make(m);
  std::vector<RootOfUnity> vals;
  for (auto gen : g->generators()) {
    vals.push_back(cropped::kronecker(discriminant, gen) == 1 ? RootOfUnity::one()
                                                              : RootOfUnity::minus_one());
  }
  return {std::move(g), std::move(vals)};
}

CharValue DirichletCharacter::operator()(std::int64_t n) const {
  const std::int64_t r = mod(n, group_->modulus());
  if (!group_->is_unit(r)) return std::nullopt;
  return table_[static_cast<std::size_t>(r)];
}

ResidueSubgroup DirichletCharacter::kernel() const {
  std::vector<std::int64_t> ker;
  for (auto a : group_->elements()) {
    if (table_[static_cast<std::size_t>(a)].is_one()) ker.push_back(a);
  }
  return {group_->modulus(), std::move(ker)};
}

std::int64_t DirichletCharacter::conductor() const {
  const std::int64_t m = group_->modulus();
  for (std::int64_t c = 1; c <= m; ++c) {
    if (m % c != 0) continue;
    bool ok = true;
    for (auto a : group_->elements()) {
      if (a % c == 1 % c && !table_[static_cast<std::size_t>(a)].is_one()) {
        ok = false;
        break;
      }
    }
    if (ok) return c;
  }
  return m;
}

DirichletCharacter DirichletCharacter::extend_to(std::int64_t new_modulus) const {
  if (new_modulus % modulus() != 0) {
    throw ValidationError("cannot extend character mod " + std::to_string(modulus()) +
                          " to modulus " + std::to_string(new_modulus));
  }
  auto g = UnitGroup::make(new_modulus);
  std::vector<RootOfUnity> vals;
  for (auto gen : g->generators()) vals.push_back(*(*this)(gen));
  return {std::move(g), std::move(vals)};
}

DirichletCharacter DirichletCharacter::operator*(const DirichletCharacter& o) const {
  if (o.modulus() != modulus()) throw ValidationError("character moduli differ");
  std::vector<RootOfUnity> vals(gen_values_.size());
  for (std::size_t i = 0; i < vals.size(); ++i) vals[i] = gen_values_[i] * o.gen_values_[i];
  return {group_, std::move(vals)};
}

DirichletCharacter DirichletCharacter::pow(std::int64_t e) const {
  std::vector<RootOfUnity> vals;
  for (const auto& v : gen_values_) vals.push_back(v.pow(e));
  return {group_, std::move(vals)};
}

std::vector<DirichletCharacter> DirichletCharacter::all(std::int64_t modulus) {
  auto g = UnitGroup::make(modulus);
  const auto orders = g->generator_orders();
  std::vector<DirichletCharacter> out;
  std::vector<std::int64_t> j(orders.size(), 0);
  for (std::int64_t count = 0; count < g->order(); ++count) {
    std::vector<RootOfUnity> vals;
    for (std::size_t i = 0; i < orders.size(); ++i) vals.emplace_back(j[i], orders[i]);
    out.emplace_back(g, std::move(vals));
    for (std::size_t i = 0; i < orders.size(); ++i) {
      if (++j[i] < orders[i]) break;
      j[i] = 0;
    }
  }
  return out;
}

std::string DirichletCharacter::describe() const {
  std::ostringstream os;
  os << "chi mod " << modulus() << " [";
  const auto gens = group_->generators();
  for (std::size_t i = 0; i < gens.size(); ++i) {
    if (i) os << ", ";
    os << gens[i] << "->" << gen_values_[i];
  }
  os << "]";
  return os.str();
}

}  // namespace cropped
