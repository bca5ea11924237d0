#pragma once

#include <filesystem>
#include <string>
#include <string_view>

#include "zetalab/zero_table.hpp"

namespace zetalab::cli {

// Lower-case hex SHA-256.
std::string sha256_hex(std::string_view bytes);

// $ZETALAB_CACHE_DIR, else $XDG_CACHE_HOME/zetalab, else ~/.cache/zetalab.
std::filesystem::path default_cache_dir();

bool is_url(std::string_view s);

struct FetchResult {
  ZeroTable table;
  std::filesystem::path cache_file;
  bool from_cache = false;
};

// Downloads an http(s) zero table and validates it with parse_zero_table.
// Only a validated payload is cached, as <sha256(url)>.txt next to a
// .sha256 file holding the payload digest; a cached copy is used when its
// digest still matches, unless `refresh` is set. NetworkError on connection
// failure or a non-200 status.
FetchResult fetch_zero_table(const std::string& url, const std::filesystem::path& cache_dir, bool refresh = false,
                             int timeout_seconds = 30);

// A local path or an http(s) URL.
ZeroTable load_zero_source(const std::string& path_or_url, const std::filesystem::path& cache_dir);

}  // namespace zetalab::cli
