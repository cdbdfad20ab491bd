#pragma once

#include <filesystem>
#include <optional>
#include <string>

#include "cropped/coeffs/orbit.hpp"

namespace cropped {

// Accepts the native orbit schema or a trace listing
// {"level": N, "traces": [a_1, a_2, ...]} for a rational newform.
OrbitData orbit_from_payload(const std::string& bytes);

struct FetchResult {
  OrbitData orbit;
  std::filesystem::path cache_file;
  bool from_cache = false;
};

// Cache directory: explicit argument, else $CROPPED_CACHE_DIR, else
// ./.cropped-cache. A bare id (no scheme) is resolved against
// $CROPPED_FETCH_BASE when it is not already cached. The payload is cached
// only after it converts cleanly.
std::filesystem::path default_cache_dir();
FetchResult fetch_orbit(const std::string& url_or_id,
                        std::optional<std::filesystem::path> cache_dir = std::nullopt);

}  // namespace cropped
