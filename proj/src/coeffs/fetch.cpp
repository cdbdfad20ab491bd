#include "cropped/coeffs/fetch.hpp"

#include <httplib.h>

#include <cstdlib>

#include "cropped/arith/modular.hpp"
#include "cropped/error.hpp"
#include "cropped/util/digest.hpp"

namespace cropped {

using nlohmann::json;

OrbitData orbit_from_payload(const std::string& bytes) {
  json j;
  try {
    j = json::parse(bytes);
  } catch (const json::parse_error& e) {
    throw SchemaError(std::string("payload is not JSON: ") + e.what());
  }
  if (!j.is_object()) throw SchemaError("payload must be a JSON object");
  if (j.contains("primes")) return parse_orbit(j);
  if (!j.contains("traces") || !j.contains("level"))
    throw SchemaError("payload has neither 'primes' nor 'level'/'traces'");
  if (j.contains("dim") && j["dim"] != 1)
    throw SchemaError("trace payloads are supported for dimension one only");
  const auto& tr = j["traces"];
  if (!tr.is_array()) throw SchemaError("'traces' must be an array");
  json native;
  native["level"] = j["level"];
  native["n"] = 1;
  if (j.contains("eps")) native["eps"] = j["eps"];
  json primes = json::array();
  for (std::uint64_t k = 2; k <= tr.size(); ++k) {
    if (!is_prime(k)) continue;
    const auto& v = tr[k - 1];
    if (!v.is_number()) throw SchemaError("non-numeric trace at n=" + std::to_string(k));
    primes.push_back({{"p", k}, {"ap", json::array({v})}});
  }
  native["primes"] = primes;
  return parse_orbit(native);
}

std::filesystem::path default_cache_dir() {
  if (const char* env = std::getenv("CROPPED_CACHE_DIR"); env && *env) return env;
  return ".cropped-cache";
}

namespace {

std::string http_get(const std::string& url) {
  const auto scheme = url.find("://");
  const auto slash = url.find('/', scheme + 3);
  const std::string origin = slash == std::string::npos ? url : url.substr(0, slash);
  const std::string path = slash == std::string::npos ? "/" : url.substr(slash);
  httplib::Client client(origin);
  if (!client.is_valid()) throw FetchError("unsupported URL " + url);
  client.set_follow_location(true);
  client.set_connection_timeout(10);
  client.set_read_timeout(30);
  auto res = client.Get(path);
  if (!res) throw FetchError("request to " + url + " failed: " + httplib::to_string(res.error()));
  if (res->status != 200)
    throw FetchError("request to " + url + " returned HTTP " + std::to_string(res->status));
  return res->body;
}

}  // namespace

FetchResult fetch_orbit(const std::string& url_or_id, std::optional<std::filesystem::path> cache_dir) {
  const auto dir = cache_dir ? *cache_dir : default_cache_dir();
  FetchResult out;
  out.cache_file = dir / (sha256_hex(url_or_id) + ".json");
  if (std::filesystem::exists(out.cache_file)) {
    out.orbit = orbit_from_payload(read_file(out.cache_file));
    out.from_cache = true;
    return out;
  }
  std::string url = url_or_id;
  if (url.find("://") == std::string::npos) {
    const char* base = std::getenv("CROPPED_FETCH_BASE");
    if (!base || !*base)
      throw FetchError("'" + url_or_id + "' is not cached and CROPPED_FETCH_BASE is unset");
    url = std::string(base) + "/" + url_or_id;
  }
  const std::string body = http_get(url);
  out.orbit = orbit_from_payload(body);
  write_file_atomic(out.cache_file, body);
  return out;
}

}  // namespace cropped
