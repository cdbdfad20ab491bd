#include <filesystem>
#include <fstream>
#include <sstream>

#include "cropped/cli/cli.hpp"
#include "cropped/util/digest.hpp"
#include "doctest.h"
#include "orbit_fixtures.hpp"

namespace fs = std::filesystem;
using namespace cropped;
using nlohmann::json;

namespace {

struct Result {
  int code;
  std::string out, err;
};

Result run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

// Fresh scratch directory per test case.
fs::path scratch(const std::string& name) {
  const auto d = fs::temp_directory_path() / ("cropped_cli_" + name);
  fs::remove_all(d);
  fs::create_directories(d);
  return d;
}

json read_json(const fs::path& p) {
  std::ifstream in(p);
  return json::parse(in);
}

std::string write_orbit(const fs::path& dir, const OrbitData& orbit) {
  const auto p = dir / "orbit.json";
  std::ofstream(p) << orbit.to_json().dump();
  return p.string();
}

}  // namespace

TEST_CASE("cli partition") {
  const auto d = scratch("partition");
  auto r = run({"partition", "--curve", "y2=x3-x", "--cm-disc", "-4", "--t", "1e5", "--out", (d / "cm").string()});
  REQUIRE(r.code == 0);
  const auto j = read_json(d / "cm" / "partition.json");
  CHECK(j["densities"]["S1"] == 1.0);
  CHECK(fs::exists(d / "cm" / "partition.csv"));

  const auto orbit = write_orbit(d, fixture::twisted_orbit(DirichletCharacter::kronecker(-4), 20000));
  r = run({"partition", "--orbit", orbit, "--t", "2e4", "--out", (d / "orbit").string()});
  REQUIRE(r.code == 0);
  const auto k = read_json(d / "orbit" / "partition.json");
  CHECK(k["densities"]["S1"].get<double>() == doctest::Approx(0.5).epsilon(0.05));
  CHECK(k["densities"]["S2+"].get<double>() == doctest::Approx(0.5).epsilon(0.05));
  const auto m = read_json(d / "orbit" / "manifest.json");
  CHECK(m["inputs"][0]["sha256"] == sha256_file(orbit));

  CHECK(run({"partition", "--t", "1e5", "--out", (d / "none").string()}).code == 2);
  CHECK(run({"partition", "--curve", "11a", "--t", "abc", "--out", (d / "bad").string()}).code == 2);
  CHECK(run({"partition", "--curve", "11a", "--t", "1e5", "--bogus"}).code == 2);
  CHECK(run({}).code == 2);
  CHECK(run({"--help"}).code == 0);
}

TEST_CASE("cli outputs are not overwritten and manifests reproduce runs") {
  const auto d = scratch("manifest");
  const auto a = (d / "a").string(), b = (d / "b").string();
  REQUIRE(run({"crop", "--curve", "11a", "--set", "all", "--sigma", "1.5", "--T", "2e4", "--out", a}).code == 0);
  const auto before = sha256_file(d / "a" / "crop.csv");
  CHECK(run({"crop", "--curve", "11a", "--set", "S1", "--T", "1e4", "--out", a}).code == 2);
  CHECK(sha256_file(d / "a" / "crop.csv") == before);
  CHECK(run({"crop", "--curve", "11a", "--set", "all", "--sigma", "1.5", "--T", "2e4", "--out", a, "--force"}).code == 0);

  REQUIRE(run({"--config", (d / "a" / "manifest.json").string(), "crop", "--out", b}).code == 0);
  for (const char* f : {"crop.csv", "crop.json", "manifest.json"}) {
    CAPTURE(f);
    CHECK(sha256_file(d / "a" / f) == sha256_file(d / "b" / f));
  }
  // Checksums recorded in the manifest match the files.
  for (const auto& o : read_json(d / "b" / "manifest.json")["outputs"])
    CHECK(sha256_file(d / "b" / o["file"].get<std::string>()) == o["sha256"]);
}

TEST_CASE("cli crop") {
  const auto d = scratch("crop");
  auto r = run({"crop", "--curve", "11a", "--set", "empty", "--out", (d / "e").string()});
  REQUIRE(r.code == 0);
  CHECK(read_json(d / "e" / "crop.json")["value"][0] == 1.0);

  r = run({"crop", "--zeta", "--T", "1e5", "--sigma", "2", "--out", (d / "z").string()});
  REQUIRE(r.code == 0);
  // prod over p = 1 mod 4 of (1 - p^-2)^-2 up to 1e5
  double expect = 0;
  for (auto p : sieve_primes(100000).primes())
    if (p % 4 == 1) expect -= 2 * std::log1p(-1.0 / (static_cast<double>(p) * p));
  CHECK(read_json(d / "z" / "crop.json")["log_value"][0].get<double>() == doctest::Approx(expect).epsilon(1e-12));

  r = run({"crop", "--curve", "11a", "--set", "field", "--T", "300", "--exact", "2", "--out", (d / "x").string()});
  REQUIRE(r.code == 0);
  CHECK(r.out.find("exact at s=2") != std::string::npos);
  CHECK(run({"crop", "--curve", "11a", "--sigma", "0.9", "--out", (d / "s").string()}).code == 2);
}

TEST_CASE("cli order") {
  const auto d = scratch("order");
  auto r = run({"order", "--zeta", "--T", "1e6", "--out", (d / "z").string()});
  REQUIRE(r.code == 0);
  const auto z = read_json(d / "z" / "order.json");
  CHECK(z["r"].get<double>() == doctest::Approx(-1).epsilon(0.2));
  CHECK(z["ord"] == -1);

  r = run({"order", "--relation", "qm", "--rank", "0", "--out", (d / "qm").string()});
  REQUIRE(r.code == 0);
  CHECK(r.out.find("ord L(f,S1,s)^4 = -1") != std::string::npos);

  r = run({"order", "--relation", "gross", "--p", "11", "--out", (d / "g11").string()});
  CHECK(r.out.find("ord L(f) = 1") != std::string::npos);
  r = run({"order", "--relation", "gross", "--p", "7", "--out", (d / "g7").string()});
  CHECK(r.out.find("ord L(f) = 0") != std::string::npos);
  CHECK(run({"order", "--relation", "gross", "--p", "13", "--out", (d / "g13").string()}).code == 2);

  CHECK(run({"order", "--relation", "noncm", "--E", "3", "--F", "1", "--L", "2", "--ord-l1", "0", "--ord-fs1", "0",
             "--out", (d / "bad").string()})
            .code == 2);
  r = run({"order", "--relation", "noncm", "--E", "4", "--F", "2", "--L", "2", "--ord-l1", "2", "--ord-fs1", "1",
           "--out", (d / "ok").string()});
  REQUIRE(r.code == 0);
  const auto rep = read_json(d / "ok" / "order.json");
  CHECK(rep["schema"] == "cropped.relations/1");
  CHECK(rep["orders"].size() == 4);

  const auto rec = d / "record.json";
  std::ofstream(rec) << R"({"E_deg": 2, "F_deg": 2, "L_deg": 4, "M_deg": 2})";
  r = run({"order", "--relation", "cm", "--record", rec.string(), "--ord-ls", "2", "--weil", "--out",
           (d / "cm").string()});
  REQUIRE(r.code == 0);
  CHECK(r.out.find("ord L(A_f/Q) = 1") != std::string::npos);
  CHECK(r.out.find("warning") != std::string::npos);
}

TEST_CASE("cli dist") {
  const auto d = scratch("dist");
  auto r = run({"dist", "--kind", "cm-angles", "--curve", "32a", "--t", "1e5", "--out", (d / "a").string()});
  REQUIRE(r.code == 0);
  CHECK(read_json(d / "a" / "dist.json")["ks_uniform_angle"].get<double>() < 0.02);
  CHECK(run({"dist", "--kind", "cm-angles", "--curve", "11a", "--out", (d / "b").string()}).code == 2);

  const auto orbit = write_orbit(d, fixture::twisted_orbit(DirichletCharacter::kronecker(-4), 20000));
  r = run({"dist", "--kind", "s2", "--orbit", orbit, "--t", "2e4", "--out", (d / "s2").string()});
  REQUIRE(r.code == 0);
  const auto j = read_json(d / "s2" / "dist.json");
  CHECK(j["S2+"]["mean_b_over_p"].get<double>() == doctest::Approx(-1).epsilon(0.1));
  CHECK(j["S2-"]["samples"] == 0);
  CHECK(fs::exists(d / "s2" / "k_plus.csv"));

  r = run({"dist", "--kind", "st", "--curve", "11a", "--modulus", "4", "--residue", "1", "--t", "2e4", "--out",
           (d / "st").string()});
  REQUIRE(r.code == 0);
  CHECK(read_json(d / "st" / "dist.json")["ks_sato_tate"].get<double>() < 0.06);
  CHECK(run({"dist", "--kind", "st", "--curve", "11a", "--zeta-k", "1", "--zeta-m", "4", "--t", "1e3", "--out",
             (d / "z").string()})
            .code == 2);
}

TEST_CASE("cli ingest and fetch") {
  const auto d = scratch("ingest");
  const auto orbit = write_orbit(d, fixture::twisted_orbit(DirichletCharacter::kronecker(-4), 2000));
  auto r = run({"ingest", "--orbit", orbit, "--detect-twists", "--out", (d / "ok").string()});
  REQUIRE(r.code == 0);
  CHECK(read_json(d / "ok" / "ingest.json")["detected_twists"].size() >= 1);

  std::ofstream(d / "broken.json") << R"({"level": 11, "n": 1, "primes": [{"p": 4, "ap": [1]}]})";
  CHECK(run({"ingest", "--orbit", (d / "broken.json").string(), "--out", (d / "b").string()}).code == 2);

  // 32a coefficients without the CM flag: two twists fit the same embedding.
  json primes = json::array();
  for (auto p : sieve_primes(1000).primes())
    if (p != 2) primes.push_back({{"p", p}, {"ap", {static_cast<double>(ec_ap(curve_32a(), p))}}});
  std::ofstream(d / "cm.json") << json{{"level", 32}, {"n", 1}, {"primes", primes}}.dump();
  CHECK(run({"ingest", "--orbit", (d / "cm.json").string(), "--detect-twists", "--out", (d / "c").string()}).code ==
        3);

  CHECK(run({"fetch", "no-such-id", "--cache-dir", (d / "cache").string(), "--out", (d / "f").string()}).code == 1);
}

TEST_CASE("cli selftest") {
  const auto d = scratch("selftest");
  const auto r = run({"selftest", "--out", (d / "s").string()});
  CHECK(r.code == 0);
  CHECK(read_json(d / "s" / "selftest.json")["pass"] == true);
}
