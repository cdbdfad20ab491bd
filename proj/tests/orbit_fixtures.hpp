#pragma once

#include "cropped/arith/dirichlet.hpp"
#include "cropped/arith/sieve.hpp"
#include "cropped/coeffs/elliptic_curve.hpp"
#include "cropped/coeffs/orbit.hpp"
#include "json.hpp"

namespace fixture {

using namespace cropped;
using nlohmann::json;

// Orbit whose embeddings are a_p(11a) twisted by powers of chi; level lcm(11, chi mod).
inline OrbitData twisted_orbit(const DirichletCharacter& chi, std::uint64_t bound) {
  const auto E = curve_11a();
  const std::int64_t level = 11 * chi.modulus();
  const int n = static_cast<int>(chi.order());
  json primes = json::array();
  for (auto p : sieve_primes(bound).primes()) {
    if (level % static_cast<std::int64_t>(p) == 0) continue;
    const auto a = static_cast<double>(ec_ap(E, p));
    json ap = json::array();
    for (int j = 0; j < n; ++j) {
      const auto v = chi.pow(j)(static_cast<std::int64_t>(p))->to_complex() * a;
      if (v.imag() == 0) ap.push_back(v.real());
      else ap.push_back(json::array({v.real(), v.imag()}));
    }
    primes.push_back({{"p", p}, {"ap", ap}});
  }
  json twists = json::array();
  for (int j = 1; j < n; ++j) twists.push_back({{"sigma_index", j}, {"chi", character_to_json(chi.pow(j))}});
  return parse_orbit({{"level", level}, {"n", n}, {"primes", primes}, {"twists", twists}});
}

inline DirichletCharacter cubic_mod_7() {
  const std::pair<std::int64_t, RootOfUnity> a[] = {{3, RootOfUnity(1, 3)}};
  return DirichletCharacter::from_values(7, a);
}

}  // namespace fixture
