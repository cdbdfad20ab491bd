#include "cropped/cli/cli.hpp"

#include <algorithm>
#include <iomanip>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <memory>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "cropped/arith/sieve.hpp"
#include "cropped/asympt/measure.hpp"
#include "cropped/asympt/order.hpp"
#include "cropped/asympt/statistics.hpp"
#include "cropped/coeffs/fetch.hpp"
#include "cropped/coeffs/hecke.hpp"
#include "cropped/coeffs/newform.hpp"
#include "cropped/error.hpp"
#include "cropped/euler/euler.hpp"
#include "cropped/relations/relations.hpp"
#include "cropped/util/digest.hpp"
#include "json.hpp"
#include "json_config.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace cropped {

namespace {

constexpr const char* kVersion = "cropped 1.0.0";
constexpr const char* kManifestSchema = "cropped.manifest/1";
constexpr std::uint64_t kMaxBound = 100000000;  // desk scale

std::uint64_t parse_bound(const std::string& s, const char* what) {
  double v = 0;
  std::size_t used = 0;
  try {
    v = std::stod(s, &used);
  } catch (const std::exception&) {
    throw ValidationError(std::string(what) + " is not a number: " + s);
  }
  if (used != s.size() || v != std::floor(v) || v < 2 || v > static_cast<double>(kMaxBound))
    throw ValidationError(std::string(what) + " must be an integer in [2, 1e8], got " + s);
  return static_cast<std::uint64_t>(v);
}

// Output directory plus the manifest that records how it was produced.
class Run {
 public:
  Run(std::string command, fs::path out, bool force) : command_(std::move(command)), out_(std::move(out)) {
    if (fs::exists(out_) && !fs::is_empty(out_) && !force)
      throw ValidationError("output directory " + out_.string() + " is not empty (use --force)");
    fs::create_directories(out_);
  }

  void write(const std::string& name, const std::string& content) {
    write_file_atomic(out_ / name, content);
    outputs_.push_back({{"file", name}, {"sha256", sha256_hex(content)}});
  }
  void input(const fs::path& p) { inputs_.push_back({{"path", p.string()}, {"sha256", sha256_file(p)}}); }

  void finish(const CLI::App& sub) {
    json opts = json::object();
    for (const auto* opt : sub.get_options()) {
      const auto name = opt->get_single_name();
      if (opt->count() == 0 || name == "help" || name == "out" || name == "force" || name == "config") continue;
      if (opt->get_type_size() == 0) {
        opts[name] = true;
      } else if (opt->get_items_expected_max() > 1) {
        opts[name] = opt->results();
      } else {
        opts[name] = opt->results().back();
      }
    }
    json m = {{"schema", kManifestSchema}, {"tool", kVersion}, {"command", command_}, {command_, opts},
              {"inputs", inputs_},         {"outputs", outputs_}};
    write_file_atomic(out_ / "manifest.json", m.dump(2) + "\n");
  }

 private:
  std::string command_;
  fs::path out_;
  json inputs_ = json::array(), outputs_ = json::array();
};

struct Descriptor {
  std::string curve, orbit, hecke;
  std::int64_t cm_disc = 0;
  std::uint64_t conductor = 0;

  void add_to(CLI::App* sub) {
    sub->add_option("--curve", curve, "elliptic curve: label, y2=x3+Ax+B or [a1,a2,a3,a4,a6]");
    sub->add_option("--cm-disc", cm_disc, "CM discriminant of the curve");
    sub->add_option("--conductor", conductor, "conductor for curves outside the catalog");
    sub->add_option("--orbit", orbit, "ingested orbit JSON file");
    sub->add_option("--hecke", hecke, "built-in Hecke character source (32a)");
  }
  bool given() const { return !curve.empty() || !orbit.empty() || !hecke.empty(); }

  EllipticCurve parsed_curve() const {
    return parse_curve(curve, conductor, cm_disc != 0 ? std::optional<std::int64_t>(cm_disc) : std::nullopt);
  }

  Newform newform(Run& run) const {
    if (!orbit.empty()) {
      run.input(orbit);
      return Newform(ingest_orbit(orbit));
    }
    if (!hecke.empty()) return Newform(hecke_source());
    if (!curve.empty()) return Newform(parsed_curve());
    throw ValidationError("no descriptor: give --curve, --orbit or --hecke");
  }

  HeckeCharacterSource hecke_source() const {
    if (!hecke.empty()) {
      if (hecke != "32a") throw IngestionOnlyError("only the built-in Hecke source 32a is native");
      return hecke_32a();
    }
    if (!curve.empty()) {
      const auto E = parsed_curve();
      if (E.label == "32a") return hecke_32a();
      throw IngestionOnlyError("no native Hecke character for curve " + E.equation());
    }
    throw ValidationError("CM angle samples need --hecke 32a or --curve 32a");
  }
};

// Q(i) as the splitting field of the odd character mod 4.
PrimePartition gaussian_partition(std::uint64_t bound) {
  const auto chi = DirichletCharacter::kronecker(-4);
  const DirichletCharacter one = DirichletCharacter::trivial(4);
  const DirichletCharacter twists[] = {chi};
  return partition_primes(field_from_inner_twists(4, one, twists), one, bound);
}

json series_json(const std::vector<SeriesPoint>& pts) { return to_json(pts); }

std::string series_csv(const std::vector<SeriesPoint>& pts, const char* column) {
  std::ostringstream os;
  os.precision(12);
  os << "t," << column << "\n";
  for (const auto& p : pts) os << p.t << "," << p.value << "\n";
  return os.str();
}

json complex_json(std::complex<double> z) { return json::array({z.real(), z.imag()}); }

// Selected crop: the primes and the factors over them.
struct CropChoice {
  std::vector<LocalFactor> factors;
  std::string label;
  std::int64_t field_degree = 1;
};

struct CropOptions {
  std::string set = "S1", twist = "plus";
  double exponent = 0;  // 0: [L:Q] for zeta and G/H crops, 1 otherwise
  bool zeta = false;
  std::string T = "1e5";

  void add_to(CLI::App* sub) {
    sub->add_option("--set", set, "S1, S2, S2+, S2-, S3, all, empty, field, G+, G-, H+, H-")
        ->check(CLI::IsMember({"S1", "S2", "S2+", "S2-", "S3", "all", "empty", "field", "G+", "G-", "H+", "H-"}));
    sub->add_option("--twist", twist, "sign of a_p in the factor")->check(CLI::IsMember({"plus", "minus"}));
    sub->add_option("--exponent", exponent, "exponent of each factor");
    sub->add_flag("--zeta", zeta, "use (1 - p^-s)^-exponent in place of the L-factors");
    sub->add_option("--T", T, "truncation bound");
  }

  CropChoice choose(const Descriptor& d, Run& run, std::uint64_t bound) const {
    CropChoice c;
    c.label = set;
    std::optional<Newform> f;
    PrimePartition part;
    if (d.given()) {
      f.emplace(d.newform(run));
      part = f->partition(bound);
    } else if (zeta || set.front() == 'G' || set.front() == 'H') {
      part = gaussian_partition(bound);
    } else {
      throw ValidationError("no descriptor: give --curve, --orbit or --hecke (or --zeta)");
    }
    c.field_degree = part.field_degree;
    const auto LQ = static_cast<double>(part.field_degree);
    std::vector<std::uint64_t> primes;
    if (set == "S1") primes = part.s1;
    else if (set == "S2") primes = part.s2;
    else if (set == "S2+" || set == "G+" || set == "G-") primes = part.s2_plus;
    else if (set == "S2-" || set == "H+" || set == "H-") primes = part.s2_minus;
    else if (set == "S3") primes = part.s3;
    else if (set == "all")
      for (const auto& r : part.rows) primes.push_back(r.p);
    if (set.front() == 'G' || set.front() == 'H') {
      c.factors = dedekind_crop_factors(primes, set.back() == '+' ? 1 : -1, exponent != 0 ? exponent : LQ);
      return c;
    }
    if (zeta) {
      c.label = "zeta " + set;
      c.factors = zeta_factors(primes, exponent != 0 ? exponent : LQ);
      return c;
    }
    if (set == "field") {
      c.factors = field_factors(*f, part, bound);
      return c;
    }
    c.factors = degree_one_factors(*f, primes, bound, twist == "plus" ? Twist::plus : Twist::minus,
                                   exponent != 0 ? exponent : 1.0);
    return c;
  }
};

struct Common {
  std::string out = "cropped-out";
  bool force = false;
  void add_to(CLI::App* sub) {
    sub->add_option("--out", out, "output directory");
    sub->add_flag("--force", force, "allow writing into a non-empty output directory");
  }
};

// partition ---------------------------------------------------------------

int cmd_partition(const CLI::App& sub, const Common& c, const Descriptor& d, const std::string& t_text,
                  std::ostream& out) {
  const auto t = parse_bound(t_text, "--t");
  if (!d.given()) throw ValidationError("no descriptor: give --curve, --orbit or --hecke");
  Run run("partition", c.out, c.force);
  const auto f = d.newform(run);
  const auto part = f.partition(t);
  std::map<int, std::size_t> by_degree;
  for (const auto& r : part.rows) ++by_degree[r.degree];
  json degrees = json::object();
  const double total = static_cast<double>(part.rows.size());
  for (const auto& [deg, n] : by_degree)
    degrees[std::to_string(deg)] = {{"count", n}, {"frequency", static_cast<double>(n) / total}};
  json report = json::parse(part.to_json());
  report["descriptor"] = f.describe();
  report["densities"] = {{"S1", part.density(part.s1)},
                         {"S2+", part.density(part.s2_plus)},
                         {"S2-", part.density(part.s2_minus)},
                         {"S3", part.density(part.s3)},
                         {"degrees", degrees}};
  run.write("partition.csv", part.to_csv());
  run.write("partition.json", report.dump(2) + "\n");
  run.finish(sub);
  out << f.describe() << "\n[L:Q] = " << part.field_degree << ", good primes <= " << t << ": " << part.rows.size()
      << "\n";
  for (const char* label : {"S1", "S2+", "S2-", "S3"})
    out << "  " << label << ": " << report["densities"][label].get<double>() << "\n";
  return 0;
}

// crop --------------------------------------------------------------------

int cmd_crop(const CLI::App& sub, const Common& c, const Descriptor& d, const CropOptions& co, double sigma,
             std::optional<long> exact, std::ostream& out) {
  const auto T = parse_bound(co.T, "--T");
  if (!(sigma > 1)) throw ValidationError("--sigma must exceed 1");
  Run run("crop", c.out, c.force);
  const auto choice = co.choose(d, run, T);
  const auto res = product(choice.factors, sigma, T);
  json report = {{"set", choice.label},
                 {"sigma", sigma},
                 {"T", T},
                 {"factors", res.factors},
                 {"field_degree", choice.field_degree},
                 {"value", complex_json(res.value)},
                 {"log_value", complex_json(res.log_value)}};
  if (res.tail_log_bound) report["tail_log_bound"] = *res.tail_log_bound;
  if (exact) {
    if (co.set != "field" || !d.given()) throw ValidationError("--exact needs --set field and a descriptor");
    const auto f = d.newform(run);
    const auto q = crop_L_over_field_exact(f, f.partition(T), *exact, T);
    report["exact"] = {{"s", *exact}, {"value", q.get_str()}, {"approx", q.get_d()}};
  }
  run.write("crop.csv", res.to_csv());
  run.write("crop.json", report.dump(2) + "\n");
  run.finish(sub);
  out << "crop " << choice.label << " at sigma=" << sigma << ", T=" << T << ": " << res.value.real();
  if (res.value.imag() != 0) out << (res.value.imag() < 0 ? " - " : " + ") << std::abs(res.value.imag()) << "i";
  out << " (" << res.factors << " factors)\n";
  if (exact) {
    // The rational itself can run to megabytes; it lives in crop.json.
    const auto& v = report["exact"]["value"].get_ref<const std::string&>();
    out << "exact at s=" << *exact << ": " << std::setprecision(17) << report["exact"]["approx"].get<double>();
    if (v.size() > 60) out << " (" << v.size() << " chars in crop.json)";
    else out << " = " << v;
    out << "\n";
  }
  return 0;
}

// dist --------------------------------------------------------------------

struct DistOptions {
  std::string kind = "st", t = "1e5", mode = "per-prime";
  int n = 1;
  std::int64_t modulus = 1, residue = 0, zeta_k = 0, zeta_m = 1;
};

int cmd_dist(const CLI::App& sub, const Common& c, const Descriptor& d, const DistOptions& o, std::ostream& out) {
  const auto t = parse_bound(o.t, "--t");
  Run run("dist", c.out, c.force);
  json report = {{"kind", o.kind}, {"t", t}};
  if (o.kind == "cm-angles") {
    const auto src = d.hecke_source();
    const bool ideal = o.mode == "per-ideal";
    const auto s = cm_angle_samples(src, t, o.n, ideal ? AngleMode::per_ideal : AngleMode::per_prime);
    const auto uni = Measure::uniform_angle(ideal ? 2 * std::numbers::pi : std::numbers::pi);
    report["samples"] = s.angles.size();
    report["ks_uniform_angle"] = ks_distance(s.angles, uni);
    report["ks_cm_arcsine"] = ks_distance(s.cosines, Measure::cm_arcsine());
    if (ideal) report["sector_pi"] = sector_fraction(s.angles, std::numbers::pi);
    run.write("angles.csv", s.angles.to_csv(uni));
    run.write("cosines.csv", s.cosines.to_csv(Measure::cm_arcsine()));
  } else if (o.kind == "st") {
    const auto f = d.newform(run);
    const auto s = sato_tate_progression_samples(f, o.modulus, o.residue, RootOfUnity(o.zeta_k, o.zeta_m), t);
    report["samples"] = s.size();
    report["ks_sato_tate"] = ks_distance(s, Measure::sato_tate());
    report["ks_cm_arcsine"] = ks_distance(s, Measure::cm_arcsine());
    run.write("samples.csv", s.to_csv(Measure::sato_tate()));
  } else if (o.kind == "s2") {
    const auto f = d.newform(run);
    const auto s = s2_b_samples(f, f.partition(t), t);
    for (const bool plus : {true, false}) {
      const auto& e = plus ? s.plus : s.minus;
      const auto& P = plus ? s.plus_primes : s.minus_primes;
      const auto& b = plus ? s.plus_b : s.minus_b;
      const std::string tag = plus ? "plus" : "minus";
      json part = {{"samples", e.size()}};
      if (e.size() > 0) {
        const auto m = plus ? Measure::mu_plus() : Measure::mu_minus();
        const double ell = plus ? -1.0 : 1.0;  // 2 E(mu+-)
        const auto ex = expectation_sequence(P, b, t);
        const auto K = k_function(P, b, ell, t);
        part["ks"] = ks_distance(e, m);
        part["mean_b_over_p"] = ex.limit;
        part["expectation"] = {{"running", series_json(ex.running)}, {"verdict", to_string(ex.verdict)}};
        part["K"] = series_json(K);
        run.write("s2_" + tag + ".csv", e.to_csv(m));
        run.write("k_" + tag + ".csv", series_csv(K, "K"));
      }
      report["S2" + std::string(plus ? "+" : "-")] = part;
    }
  } else if (o.kind == "sym2") {
    const auto f = d.newform(run);
    std::vector<std::uint64_t> cps;
    for (std::uint64_t x = 1000; x <= t; x *= 10) cps.push_back(x);
    if (cps.empty() || cps.back() != t) cps.push_back(t);
    const auto r = sym2_partial_sum(f, o.modulus, o.residue, cps);
    report["running"] = series_json(r.running);
    report["drift"] = r.drift;
    run.write("sym2.csv", series_csv(r.running, "sum"));
  } else {
    throw ValidationError("unknown --kind " + o.kind);
  }
  run.write("dist.json", report.dump(2) + "\n");
  run.finish(sub);
  out << report.dump(2) << "\n";
  return 0;
}

// order -------------------------------------------------------------------

struct OrderOptions {
  std::string relation = "none", record;
  std::optional<std::int64_t> E, F, L, n, ord_l1, ord_fs1, ord_ls, rank, p;
  int dim_t = 1, M = 1;
  std::int64_t h = 1;
  bool cm = false, weil = false, galois = false;
  double delta0 = 0.1, c = 0.02;
  int K = 6;
};

InvariantRecord order_record(const OrderOptions& o, bool cm, Run& run) {
  if (!o.record.empty()) {
    run.input(o.record);
    std::ifstream in(o.record);
    json j;
    try {
      in >> j;
    } catch (const json::exception& e) {
      throw ValidationError("record is not valid JSON: " + std::string(e.what()));
    }
    if (cm) j["cm"] = true;
    return InvariantRecord::from_json(j);
  }
  if (!o.E || !o.F || !o.L) throw ValidationError("give --record or --E, --F, --L");
  return InvariantRecord::make(*o.E, *o.F, *o.L, o.dim_t, o.n.value_or(1), cm || o.cm, o.M);
}

std::int64_t need(const std::optional<std::int64_t>& v, const char* name) {
  if (!v) throw ValidationError(std::string("missing ") + name);
  return *v;
}

int cmd_order(const CLI::App& sub, const Common& c, const Descriptor& d, const CropOptions& co,
              const OrderOptions& o, std::ostream& out) {
  Run run("order", c.out, c.force);
  json report;
  if (o.relation == "none") {
    const auto T = parse_bound(co.T, "--T");
    const auto choice = co.choose(d, run, T);
    OrderGrid grid;
    grid.delta0 = o.delta0;
    grid.K = o.K;
    grid.c = o.c;
    const auto est = order_estimate(choice.factors, T, grid);
    report = est.to_json();
    report["set"] = choice.label;
    report["T"] = T;
    out << "order estimate for " << choice.label << ": r = " << est.r << " (residual " << est.residual << ")";
    if (est.ord) out << ", ord = " << *est.ord;
    out << "\n";
  } else {
    RelationReport rep;
    if (o.relation == "qm") {
      rep.record = InvariantRecord::make(2, 1, 2, 2, 1);
      if (o.rank) {
        rep.entries.push_back({"ord L(A_f/Q)", *o.rank, "input", "analytic rank"});
        rep.entries.push_back(
            {"ord L(f,S1,s)^4", qm_required_crop_order(*o.rank), "QM surfaces", "2 ord L(A_f/Q) - 1"});
      } else {
        const auto x = need(o.ord_fs1, "--ord-fs1 or --rank");
        rep.entries.push_back({"ord L(A_f/Q)", qm_surface_order(x), "QM surfaces", "(ord L(f,S1,s)^4 + 1)/2"});
      }
    } else if (o.relation == "gross") {
      rep = gross_relations(need(o.p, "--p"), o.h);
    } else if (o.relation == "noncm") {
      rep = order_relations_noncm(order_record(o, false, run), need(o.ord_l1, "--ord-l1"), need(o.ord_fs1, "--ord-fs1"));
    } else if (o.relation == "cm") {
      rep = order_relations_cm(order_record(o, true, run), need(o.ord_ls, "--ord-ls"), o.weil, o.galois);
    }
    report = rep.to_json();
    for (const auto& e : rep.entries) out << e.quantity << " = " << e.value << "  [" << e.relation << "]\n";
    for (const auto& w : rep.warnings) out << "warning: " << w << "\n";
  }
  run.write("order.json", report.dump(2) + "\n");
  run.finish(sub);
  return 0;
}

// ingest / fetch ----------------------------------------------------------

json orbit_summary(const OrbitData& orbit) {
  return {{"level", orbit.level}, {"embeddings", orbit.n}, {"rows", orbit.rows.size()},
          {"max_p", orbit.rows.empty() ? 0 : orbit.rows.back().p}, {"twists", orbit.twists.size()}};
}

int cmd_ingest(const CLI::App& sub, const Common& c, const std::string& path, bool detect, std::ostream& out) {
  if (path.empty()) throw ValidationError("--orbit is required");
  Run run("ingest", c.out, c.force);
  run.input(path);
  const auto orbit = ingest_orbit(path);
  json report = orbit_summary(orbit);
  if (detect) {
    json tw = json::array();
    for (const auto& t : detect_inner_twists(orbit))
      tw.push_back({{"sigma_index", t.sigma_index}, {"chi", character_to_json(t.chi)}});
    report["detected_twists"] = tw;
  }
  run.write("orbit.json", orbit.to_json().dump(2) + "\n");
  run.write("ingest.json", report.dump(2) + "\n");
  run.finish(sub);
  out << report.dump(2) << "\n";
  return 0;
}

int cmd_fetch(const CLI::App& sub, const Common& c, const std::string& id, const std::string& cache_dir,
              std::ostream& out) {
  if (id.empty()) throw ValidationError("fetch needs a URL or id");
  Run run("fetch", c.out, c.force);
  const auto res = fetch_orbit(id, cache_dir.empty() ? std::nullopt : std::optional<fs::path>(cache_dir));
  json report = orbit_summary(res.orbit);
  report["cache_file"] = res.cache_file.string();
  report["from_cache"] = res.from_cache;
  run.write("orbit.json", res.orbit.to_json().dump(2) + "\n");
  run.finish(sub);
  out << report.dump(2) << "\n";
  return 0;
}

// selftest ----------------------------------------------------------------

int cmd_selftest(const CLI::App& sub, const Common& c, std::ostream& out) {
  Run run("selftest", c.out, c.force);
  json checks = json::array();
  bool all = true;
  auto record = [&](const std::string& name, bool ok, const std::string& detail) {
    out << (ok ? "pass  " : "FAIL  ") << name << "  " << detail << "\n";
    checks.push_back({{"check", name}, {"pass", ok}, {"detail", detail}});
    all = all && ok;
  };
  {
    bool ok = true;
    int count = 0;
    const auto primes = sieve_primes(200).primes();
    for (auto p : primes)
      for (std::int64_t a = -3; a <= 3; ++a)
        for (int e : {1, -1}) {
          const RootOfUnity eps(e == 1 ? 0 : 1, e == 1 ? 1 : 2);
          for (const auto& s : {mpq_class(1), mpq_class(3, 2), mpq_class(2)}) {
            ok = ok && factorization_identity_check(p, a, eps, s);
            ++count;
          }
        }
    record("factorization identity", ok, std::to_string(count) + " cases");
  }
  {
    const auto src = hecke_32a();
    const auto E = curve_32a();
    int bad = 0, count = 0;
    for (auto p : sieve_primes(3000).primes()) {
      if (p == 2) continue;
      ++count;
      if (hecke_ap(src, p).ap_exact != ec_ap(E, p)) ++bad;
    }
    record("hecke_ap = ec_ap on 32a", bad == 0, std::to_string(count) + " primes");
  }
  {
    const auto P = sieve_primes(1000000).primes();
    const auto est = order_estimate(zeta_factors(P), 1000000);
    std::ostringstream d;
    d << "r = " << est.r;
    record("zeta order at s=1", std::abs(est.r + 1) < 0.15, d.str());
  }
  {
    std::vector<double> q;
    for (int k = 1; k <= 99; ++k) q.push_back(Measure::sato_tate().quantile(k / 100.0));
    const double ks = ks_distance(q, Measure::sato_tate());
    record("KS of exact quantiles", ks <= 0.01 + 1e-9, std::to_string(ks));
  }
  run.write("selftest.json", json{{"checks", checks}, {"pass", all}}.dump(2) + "\n");
  run.finish(sub);
  if (!all) throw InconclusiveError("selftest failed");
  return 0;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Cropped Euler products of weight-2 L-functions", "cropped"};
  app.set_version_flag("--version", kVersion);
  app.set_config("--config", "", "JSON config; nested objects name subcommands");
  app.config_formatter(std::make_shared<JsonConfig>());
  app.allow_config_extras(CLI::config_extras_mode::ignore);
  app.require_subcommand(1);

  Common common;
  Descriptor desc;
  CropOptions crop;
  DistOptions dist;
  OrderOptions order;
  std::string t_text = "1e5", orbit_path, fetch_id, cache_dir;
  double sigma = 1.5;
  std::optional<long> exact;
  bool detect = false;

  auto* partition = app.add_subcommand("partition", "split primes by residue degree in L");
  common.add_to(partition);
  desc.add_to(partition);
  partition->add_option("--t", t_text, "prime bound");

  auto* crop_cmd = app.add_subcommand("crop", "truncated partial Euler product");
  common.add_to(crop_cmd);
  desc.add_to(crop_cmd);
  crop.add_to(crop_cmd);
  crop_cmd->add_option("--sigma", sigma, "real s > 1");
  crop_cmd->add_option("--exact", exact, "also evaluate the field crop exactly at this integer s");

  auto* dist_cmd = app.add_subcommand("dist", "equidistribution and convergence reports");
  common.add_to(dist_cmd);
  desc.add_to(dist_cmd);
  dist_cmd->add_option("--kind", dist.kind, "report type")->check(CLI::IsMember({"cm-angles", "st", "s2", "sym2"}));
  dist_cmd->add_option("--t", dist.t, "prime bound");
  dist_cmd->add_option("--mode", dist.mode)->check(CLI::IsMember({"per-prime", "per-ideal"}));
  dist_cmd->add_option("--n", dist.n, "residue degree for CM angles");
  dist_cmd->add_option("--modulus", dist.modulus, "progression modulus M");
  dist_cmd->add_option("--residue", dist.residue, "progression residue m");
  dist_cmd->add_option("--zeta-k", dist.zeta_k, "zeta = e(k/m)");
  dist_cmd->add_option("--zeta-m", dist.zeta_m, "denominator of zeta");

  auto* order_cmd = app.add_subcommand("order", "order at s=1: numeric estimate or exact relations");
  common.add_to(order_cmd);
  desc.add_to(order_cmd);
  crop.add_to(order_cmd);
  order_cmd->add_option("--relation", order.relation, "exact relation family, or none for the numeric estimate")->check(CLI::IsMember({"none", "noncm", "cm", "qm", "gross"}));
  order_cmd->add_option("--record", order.record, "invariant record JSON");
  order_cmd->add_option("--E", order.E, "[E:Q]");
  order_cmd->add_option("--F", order.F, "[F:Q]");
  order_cmd->add_option("--L", order.L, "[L:Q]");
  order_cmd->add_option("--n", order.n, "order of the nebentypus");
  order_cmd->add_option("--dim-t", order.dim_t, "t in {1, 2}");
  order_cmd->add_option("--M", order.M, "[M:Q] in {1, 2}");
  order_cmd->add_flag("--cm", order.cm, "the form has complex multiplication");
  order_cmd->add_option("--ord-l1", order.ord_l1, "ord L1^{2[L:Q]}");
  order_cmd->add_option("--ord-fs1", order.ord_fs1, "ord L(f,S1,s)^{2[L:Q]}");
  order_cmd->add_option("--ord-ls", order.ord_ls, "ord L(s)^{[L:K]}");
  order_cmd->add_option("--rank", order.rank, "ord L(A_f/Q) for the QM inverse relation");
  order_cmd->add_option("--p", order.p, "Gross curve prime");
  order_cmd->add_option("--class-number", order.h, "class number of Q(sqrt -p)");
  order_cmd->add_flag("--weil", order.weil, "assume A_f is a Weil restriction from M");
  order_cmd->add_flag("--galois-invariant", order.galois, "assume ord L(f,s) is Galois invariant");
  order_cmd->add_option("--delta0", order.delta0, "largest sigma - 1 on the estimator grid");
  order_cmd->add_option("--K", order.K, "grid halvings below delta0");
  order_cmd->add_option("--c", order.c, "drop grid points with sigma - 1 < c / log T");

  auto* ingest = app.add_subcommand("ingest", "validate and normalize an orbit file");
  common.add_to(ingest);
  ingest->add_option("--orbit", orbit_path, "orbit JSON");
  ingest->add_flag("--detect-twists", detect, "search for inner twists");

  auto* fetch = app.add_subcommand("fetch", "download an orbit into the cache");
  common.add_to(fetch);
  fetch->add_option("source", fetch_id, "URL or id (resolved against CROPPED_FETCH_BASE)");
  fetch->add_option("--cache-dir", cache_dir, "cache directory (default CROPPED_CACHE_DIR or ./.cropped-cache)");

  auto* selftest = app.add_subcommand("selftest", "quick internal consistency checks");
  common.add_to(selftest);

  for (auto* s : app.get_subcommands({})) s->fallthrough();

  std::vector<std::string> rev(args.rbegin(), args.rend());
  try {
    app.parse(rev);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  }

  try {
    if (partition->parsed()) return cmd_partition(*partition, common, desc, t_text, out);
    if (crop_cmd->parsed()) return cmd_crop(*crop_cmd, common, desc, crop, sigma, exact, out);
    if (dist_cmd->parsed()) return cmd_dist(*dist_cmd, common, desc, dist, out);
    if (order_cmd->parsed()) return cmd_order(*order_cmd, common, desc, crop, order, out);
    if (ingest->parsed()) return cmd_ingest(*ingest, common, orbit_path, detect, out);
    if (fetch->parsed()) return cmd_fetch(*fetch, common, fetch_id, cache_dir, out);
    if (selftest->parsed()) return cmd_selftest(*selftest, common, out);
  } catch (const ValidationError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const InconclusiveError& e) {
    err << "inconclusive: " << e.what() << "\n";
    return 3;
  } catch (const FetchError& e) {
    err << "fetch failed: " << e.what() << "\n";
    return 1;
  } catch (const fs::filesystem_error& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}

}  // namespace cropped
