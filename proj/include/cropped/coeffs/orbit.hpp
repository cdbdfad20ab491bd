#pragma once

#include <complex>
#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "cropped/arith/dirichlet.hpp"

namespace cropped {

inline constexpr double kOrbitTolerance = 1e-9;

struct OrbitRow {
  std::uint64_t p = 0;
  std::vector<std::complex<double>> ap;  // one per embedding
  CharValue eps;                         // empty when p | N
};

// a^{(sigma_index)}_p = chi(p) a^{(0)}_p for p not dividing N.
struct OrbitTwist {
  int sigma_index = 0;
  DirichletCharacter chi;
};

struct OrbitData {
  std::int64_t level = 1;
  DirichletCharacter eps = DirichletCharacter::trivial(1);
  int n = 1;
  std::vector<OrbitRow> rows;
  std::vector<OrbitTwist> twists;
  std::optional<int> degree_E, degree_F, degree_t;
  std::map<std::uint64_t, int> d_override;
  std::optional<std::int64_t> cm_discriminant;

  nlohmann::json to_json() const;
  const OrbitRow* row(std::uint64_t p) const;
};

// Validating loaders. SchemaError, DeligneBoundError and TwistRelationError
// distinguish the three ways a file can be rejected.
OrbitData parse_orbit(const nlohmann::json& j);
OrbitData ingest_orbit(const std::filesystem::path& path);

// Character <-> JSON {"modulus": M, "generator_values": [{"g":..,"k":..,"m":..}]}.
nlohmann::json character_to_json(const DirichletCharacter& chi);
DirichletCharacter character_from_json(const nlohmann::json& j);

struct DetectedTwist {
  int sigma_index;
  DirichletCharacter chi;
};

// Searches characters mod N of order <= max_order. Needs >= 50 good primes.
// For orbits without CM more than one twist for the same embedding raises
// InconclusiveError.
std::vector<DetectedTwist> detect_inner_twists(const OrbitData& orbit, int max_order = 12);

}  // namespace cropped
