#include "cropped/coeffs/orbit.hpp"

#include <cmath>
#include <fstream>
#include <map>

#include "cropped/arith/modular.hpp"
#include "cropped/error.hpp"

namespace cropped {

using nlohmann::json;

namespace {

std::complex<double> number_from_json(const json& v) {
  if (v.is_number()) return {v.get<double>(), 0.0};
  if (v.is_array() && v.size() == 2 && v[0].is_number() && v[1].is_number())
    return {v[0].get<double>(), v[1].get<double>()};
  throw SchemaError("a_p entries must be numbers or [re, im] pairs");
}

json number_to_json(std::complex<double> z) {
  if (z.imag() == 0.0) {
    if (z.real() == std::round(z.real()) && std::abs(z.real()) < 1e15)
      return static_cast<std::int64_t>(z.real());
    return z.real();
  }
  return json::array({z.real(), z.imag()});
}

template <class T>
T need(const json& j, const char* key) {
  if (!j.contains(key)) throw SchemaError(std::string("missing field '") + key + "'");
  try {
    return j.at(key).get<T>();
  } catch (const json::exception&) {
    throw SchemaError(std::string("bad type for field '") + key + "'");
  }
}

bool close(std::complex<double> x, std::complex<double> y) {
  return std::abs(x - y) <= kOrbitTolerance * std::max(1.0, std::abs(y));
}

}  // namespace

json character_to_json(const DirichletCharacter& chi) {
  json vals = json::array();
  const auto gens = chi.group().generators();
  const auto v = chi.generator_values();
  for (std::size_t i = 0; i < gens.size(); ++i)
    vals.push_back({{"g", gens[i]}, {"k", v[i].numerator()}, {"m", v[i].order()}});
  return {{"modulus", chi.modulus()}, {"generator_values", vals}};
}

DirichletCharacter character_from_json(const json& j) {
  if (!j.is_object()) throw SchemaError("character must be an object");
  const auto modulus = need<std::int64_t>(j, "modulus");
  if (modulus < 1) throw SchemaError("character modulus must be positive");
  std::vector<std::pair<std::int64_t, RootOfUnity>> assignment;
  if (j.contains("generator_values")) {
    for (const auto& e : j.at("generator_values")) {
      const auto m = need<std::int64_t>(e, "m");
      if (m < 1) throw SchemaError("root-of-unity order must be positive");
      assignment.emplace_back(need<std::int64_t>(e, "g"), RootOfUnity(need<std::int64_t>(e, "k"), m));
    }
  }
  if (assignment.empty()) return DirichletCharacter::trivial(modulus);
  try {
    return DirichletCharacter::from_values(modulus, assignment);
  } catch (const ValidationError& ex) {
    throw SchemaError(std::string("character: ") + ex.what());
  }
}

const OrbitRow* OrbitData::row(std::uint64_t p) const {
  for (const auto& r : rows)
    if (r.p == p) return &r;
  return nullptr;
}

json OrbitData::to_json() const {
  json j;
  j["level"] = level;
  j["eps"] = character_to_json(eps);
  j["n"] = n;
  json primes = json::array();
  for (const auto& r : rows) {
    json ap = json::array();
    for (auto z : r.ap) ap.push_back(number_to_json(z));
    json e = nullptr;
    if (r.eps) e = {{"k", r.eps->numerator()}, {"m", r.eps->order()}};
    primes.push_back({{"p", r.p}, {"ap", ap}, {"eps_p", e}});
  }
  j["primes"] = primes;
  json tw = json::array();
  for (const auto& t : twists)
    tw.push_back({{"sigma_index", t.sigma_index}, {"chi", character_to_json(t.chi)}});
  j["twists"] = tw;
  json deg = json::object();
  if (degree_E) deg["E"] = *degree_E;
  if (degree_F) deg["F"] = *degree_F;
  if (degree_t) deg["t"] = *degree_t;
  j["degrees"] = deg;
  json d = json::array();
  for (const auto& [p, v] : d_override) d.push_back({{"p", p}, {"d", v}});
  j["d_override"] = d;
  if (cm_discriminant) j["cm"] = {{"discriminant", *cm_discriminant}};
  return j;
}

OrbitData parse_orbit(const json& j) {
  if (!j.is_object()) throw SchemaError("orbit file must hold a JSON object");
  OrbitData o;
  o.level = need<std::int64_t>(j, "level");
  if (o.level < 1) throw SchemaError("level must be positive");
  o.n = need<int>(j, "n");
  if (o.n < 1) throw SchemaError("n must be positive");
  o.eps = DirichletCharacter::trivial(o.level);
  if (j.contains("eps") && !j["eps"].is_null()) {
    const auto e = character_from_json(j["eps"]);
    if (o.level % e.modulus() != 0) throw SchemaError("eps modulus must divide the level");
    o.eps = e.extend_to(o.level);
  }
  if (j.contains("cm") && !j["cm"].is_null()) o.cm_discriminant = need<std::int64_t>(j["cm"], "discriminant");
  if (j.contains("degrees") && j["degrees"].is_object()) {
    const auto& d = j["degrees"];
    if (d.contains("E")) o.degree_E = need<int>(d, "E");
    if (d.contains("F")) o.degree_F = need<int>(d, "F");
    if (d.contains("t")) o.degree_t = need<int>(d, "t");
    if (o.degree_E && *o.degree_E != o.n) throw SchemaError("degrees.E differs from n");
  }

  const auto& primes = j.contains("primes") ? j["primes"] : throw SchemaError("missing field 'primes'");
  if (!primes.is_array()) throw SchemaError("'primes' must be an array");
  std::uint64_t last = 0;
  for (const auto& r : primes) {
    OrbitRow row;
    row.p = need<std::uint64_t>(r, "p");
    if (!is_prime(row.p)) throw SchemaError("non-prime p=" + std::to_string(row.p));
    if (row.p <= last) throw SchemaError("primes must be strictly increasing");
    last = row.p;
    if (!r.contains("ap") || !r["ap"].is_array()) throw SchemaError("row without ap array");
    for (const auto& v : r["ap"]) row.ap.push_back(number_from_json(v));
    if (static_cast<int>(row.ap.size()) != o.n)
      throw SchemaError("row p=" + std::to_string(row.p) + " has wrong embedding count");
    const bool bad = o.level % static_cast<std::int64_t>(row.p) == 0;
    row.eps = o.eps(static_cast<std::int64_t>(row.p));
    if (r.contains("eps_p") && !r["eps_p"].is_null() && !(r["eps_p"].is_number() && r["eps_p"] == 0)) {
      if (bad) throw SchemaError("eps_p given at a prime dividing the level");
      const RootOfUnity given(need<std::int64_t>(r["eps_p"], "k"), need<std::int64_t>(r["eps_p"], "m"));
      if (given != *row.eps)
        throw SchemaError("eps_p disagrees with eps at p=" + std::to_string(row.p));
    }
    const double bound = 2.0 * std::sqrt(static_cast<double>(row.p)) * (1.0 + kOrbitTolerance);
    for (auto z : row.ap)
      if (std::abs(z) > bound)
        throw DeligneBoundError("Deligne bound violated at p=" + std::to_string(row.p));
    o.rows.push_back(std::move(row));
  }

  if (j.contains("twists") && j["twists"].is_array()) {
    for (const auto& t : j["twists"]) {
      OrbitTwist tw{need<int>(t, "sigma_index"), character_from_json(t.contains("chi") ? t["chi"] : json())};
      if (tw.sigma_index < 0 || tw.sigma_index >= o.n) throw SchemaError("sigma_index out of range");
      if (o.level % tw.chi.modulus() != 0) throw SchemaError("twist modulus must divide the level");
      tw.chi = tw.chi.extend_to(o.level);
      o.twists.push_back(std::move(tw));
    }
  }
  if (j.contains("d_override") && j["d_override"].is_array()) {
    for (const auto& e : j["d_override"]) {
      const auto p = need<std::uint64_t>(e, "p");
      const auto d = need<int>(e, "d");
      if (d < 1) throw SchemaError("d_override entries must be positive");
      o.d_override[p] = d;
    }
  }

  for (const auto& tw : o.twists) {
    const auto j0 = static_cast<std::size_t>(tw.sigma_index);
    for (const auto& r : o.rows) {
      const auto c = tw.chi(static_cast<std::int64_t>(r.p));
      if (!c) continue;
      if (!close(r.ap[j0], c->to_complex() * r.ap[0]))
        throw TwistRelationError("twist " + tw.chi.describe() + " fails at p=" + std::to_string(r.p));
    }
  }
  return o;
}

OrbitData ingest_orbit(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open " + path.string());
  json j;
  try {
    j = json::parse(in);
  } catch (const json::parse_error& e) {
    throw SchemaError(std::string("invalid JSON: ") + e.what());
  }
  return parse_orbit(j);
}

std::vector<DetectedTwist> detect_inner_twists(const OrbitData& orbit, int max_order) {
  std::vector<const OrbitRow*> good;
  for (const auto& r : orbit.rows)
    if (orbit.level % static_cast<std::int64_t>(r.p) != 0) good.push_back(&r);
  if (good.size() < 50) throw ValidationError("twist detection needs at least 50 good primes");
  std::vector<DetectedTwist> out;
  std::map<int, int> per_sigma;
  for (const auto& chi : DirichletCharacter::all(orbit.level)) {
    if (chi.order() > max_order) continue;
    for (int s = 0; s < orbit.n; ++s) {
      bool ok = true;
      for (const auto* r : good) {
        const auto a0 = r->ap[0];
        if (std::abs(a0) <= kOrbitTolerance) continue;
        const auto c = chi(static_cast<std::int64_t>(r->p));
        if (!close(r->ap[static_cast<std::size_t>(s)], c->to_complex() * a0)) {
          ok = false;
          break;
        }
      }
      if (ok) {
        out.push_back({s, chi});
        ++per_sigma[s];
      }
    }
  }
  if (!orbit.cm_discriminant) {
    for (const auto& [s, count] : per_sigma)
      if (count > 1)
        throw InconclusiveError("embedding " + std::to_string(s) +
                                " admits several inner twists; is the orbit CM?");
  }
  return out;
}

}  // namespace cropped
