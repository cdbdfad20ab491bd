#include "cropped/splitting/partition.hpp"

#include <sstream>

#include "cropped/arith/sieve.hpp"
#include "cropped/splitting/imag_quad.hpp"
#include "json.hpp"

namespace cropped {
namespace {

void place(PrimePartition& part, std::uint64_t p, int d, const RootOfUnity& eps,
           std::optional<SplitType> split) {
  PartitionRow row{p, d, "", 0, split};
  if (auto s = eps.real_sign()) row.eps_sign = *s;
  const bool cm = split.has_value();
  if (d == 1 || (cm && d == 2 && *split == SplitType::inert)) {
    row.label = "S1";
    part.s1.push_back(p);
  } else if (d == 2) {
    part.s2.push_back(p);
    if (row.eps_sign == 1) {
      row.label = "S2+";
      part.s2_plus.push_back(p);
    } else if (row.eps_sign == -1) {
      row.label = "S2-";
      part.s2_minus.push_back(p);
    } else {
      row.label = "S2";
    }
  } else {
    row.label = "S3";
    part.s3.push_back(p);
  }
  part.rows.push_back(std::move(row));
}

void place_ideals(PrimePartition& part, std::uint64_t p, int d_ideal, bool inert) {
  const IdealRecord rec{p, d_ideal, inert};
  const int copies = inert ? 1 : 2;
  for (int i = 0; i < copies; ++i) {
    if (d_ideal == 1) {
      part.s1_ideals.push_back(rec);
    } else if (d_ideal == 2 && !inert) {
      part.s2_ideals.push_back(rec);
    } else {
      part.s3_ideals.push_back(rec);
    }
  }
}

}  // namespace

double PrimePartition::density(const std::vector<std::uint64_t>& set) const {
  return rows.empty() ? 0.0
                      : static_cast<double>(set.size()) / static_cast<double>(rows.size());
}

std::string PrimePartition::to_csv() const {
  std::ostringstream os;
  os << "p,d,set,eps_sign\n";
  for (const auto& r : rows) os << r.p << ',' << r.degree << ',' << r.label << ',' << r.eps_sign << '\n';
  return os.str();
}

std::string PrimePartition::to_json() const {
  nlohmann::ordered_json j;
  j["schema"] = "cropped-partition/1";
  j["bound"] = bound;
  j["level"] = level;
  j["field_degree"] = field_degree;
  j["cm"] = cm;
  j["counts"] = {{"good_primes", rows.size()}, {"S1", s1.size()},     {"S2", s2.size()},
                 {"S2+", s2_plus.size()},      {"S2-", s2_minus.size()}, {"S3", s3.size()}};
  j["densities"] = {{"S1", density(s1)}, {"S2", density(s2)}, {"S3", density(s3)}};
  if (cm) {
    j["ideal_counts"] = {{"S1'", s1_ideals.size()},
                         {"S2'", s2_ideals.size()},
                         {"S3'", s3_ideals.size()}};
  }
  auto& arr = j["rows"] = nlohmann::ordered_json::array();
  for (const auto& r : rows) {
    nlohmann::ordered_json row = {{"p", r.p}, {"d", r.degree}, {"set", r.label}, {"eps_sign", r.eps_sign}};
    if (r.split) row["split"] = to_string(*r.split);
    arr.push_back(std::move(row));
  }
  return j.dump(1);
}

PrimePartition partition_primes(const CyclotomicSplittingField& field,
                                const DirichletCharacter& nebentypus,
                                std::uint64_t bound) {
  PrimePartition part;
  part.bound = bound;
  part.level = field.level();
  part.field_degree = field.degree();
  const auto eps = nebentypus.extend_to(field.level());
  for (auto p : sieve_primes(bound).coprime_to(static_cast<std::uint64_t>(field.level()))) {
    place(part, p, field.residue_degree(p), *eps(static_cast<std::int64_t>(p)), std::nullopt);
  }
  return part;
}

PrimePartition partition_primes(const RayClassDescriptor& ray, std::uint64_t bound) {
  PrimePartition part;
  part.bound = bound;
  part.level = ray.level();
  part.field_degree = ray.degree();
  part.cm = true;
  for (auto p : sieve_primes(bound).coprime_to(static_cast<std::uint64_t>(ray.level()))) {
    const auto deg = cm_residue_degree(ray, p);
    place(part, p, static_cast<int>(deg.prime_degree),
          *ray.nebentypus()(static_cast<std::int64_t>(p)), deg.split);
    place_ideals(part, p, static_cast<int>(deg.ideal_degree), deg.split == SplitType::inert);
  }
  return part;
}

PrimePartition partition_from_degrees(
    std::int64_t level, std::int64_t field_degree, std::uint64_t bound,
    const std::function<int(std::uint64_t)>& degree_of,
    const std::function<RootOfUnity(std::uint64_t)>& eps_of,
    std::optional<std::int64_t> discriminant) {
  PrimePartition part;
  part.bound = bound;
  part.level = level;
  part.field_degree = field_degree;
  part.cm = discriminant.has_value();
  std::optional<ImagQuadField> K;
  if (discriminant) K.emplace(*discriminant);
  for (auto p : sieve_primes(bound).coprime_to(static_cast<std::uint64_t>(level))) {
    const int d = degree_of(p);
    std::optional<SplitType> st;
    if (K) st = K->split_type(p);
    place(part, p, d, eps_of(p), st);
    if (K) {
      const bool inert = *st == SplitType::inert;
      place_ideals(part, p, inert ? d / 2 : d, inert);
    }
  }
  return part;
}

}  // namespace cropped
