#include "fetch.hpp"

#include <cstdlib>
#include <fstream>
#include <sstream>

#include <httplib.h>
#include <openssl/evp.h>

#include "report.hpp"
#include "zetalab/error.hpp"

namespace zetalab::cli {

namespace fs = std::filesystem;

std::string sha256_hex(std::string_view bytes) {
  unsigned char md[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(bytes.data(), bytes.size(), md, &len, EVP_sha256(), nullptr) != 1) throw Error("SHA-256 failed");
  static const char* hex = "0123456789abcdef";
  std::string out;
  for (unsigned int i = 0; i < len; ++i) {
    out += hex[md[i] >> 4];
    out += hex[md[i] & 15];
  }
  return out;
}

fs::path default_cache_dir() {
  if (const char* d = std::getenv("ZETALAB_CACHE_DIR"); d && *d) return d;
  if (const char* x = std::getenv("XDG_CACHE_HOME"); x && *x) return fs::path(x) / "zetalab";
  if (const char* h = std::getenv("HOME"); h && *h) return fs::path(h) / ".cache" / "zetalab";
  return fs::temp_directory_path() / "zetalab-cache";
}

bool is_url(std::string_view s) { return s.starts_with("http://") || s.starts_with("https://"); }

namespace {

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string trim(std::string s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.pop_back();
  return s;
}

}  // namespace

FetchResult fetch_zero_table(const std::string& url, const fs::path& cache_dir, bool refresh, int timeout_seconds) {
  if (!is_url(url)) throw DomainError("not an http(s) URL: " + url);
  const std::string key = sha256_hex(url);
  const fs::path data = cache_dir / (key + ".txt");
  const fs::path digest = cache_dir / (key + ".sha256");

  if (!refresh && fs::exists(data) && fs::exists(digest)) {
    const std::string bytes = slurp(data);
    if (sha256_hex(bytes) == trim(slurp(digest))) {
      FetchResult r{parse_zero_table(bytes, url), data, true};
      r.table.sha256 = trim(slurp(digest));
      return r;
    }
  }

  // Split scheme://host[:port] from the path.
  const auto scheme_end = url.find("://") + 3;
  const auto path_start = url.find('/', scheme_end);
  const std::string origin = url.substr(0, path_start);
  const std::string path = path_start == std::string::npos ? "/" : url.substr(path_start);

  httplib::Client client(origin);
  client.set_connection_timeout(timeout_seconds, 0);
  client.set_read_timeout(timeout_seconds, 0);
  client.set_follow_location(true);
  const auto res = client.Get(path);
  if (!res) throw NetworkError("fetch " + url + ": " + httplib::to_string(res.error()));
  if (res->status != 200) throw NetworkError("fetch " + url + ": HTTP " + std::to_string(res->status));

  // Validation throws before anything reaches the cache.
  FetchResult r{parse_zero_table(res->body, url), data, false};
  r.table.sha256 = sha256_hex(res->body);
  atomic_write(data, res->body);
  atomic_write(digest, r.table.sha256 + "\n");
  return r;
}

ZeroTable load_zero_source(const std::string& path_or_url, const fs::path& cache_dir) {
  if (is_url(path_or_url)) return fetch_zero_table(path_or_url, cache_dir).table;
  return load_zero_table(path_or_url);
}

}  // namespace zetalab::cli
