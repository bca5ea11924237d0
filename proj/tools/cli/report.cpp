#include "report.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <random>

#include "zetalab/error.hpp"

namespace zetalab::cli {

namespace {

bool within(double residual, double tolerance) { return std::isfinite(residual) && residual <= tolerance; }

// JSON has no infinities or NaN; they are written as strings.
Json number(double x) {
  if (std::isfinite(x)) return x;
  if (std::isnan(x)) return "nan";
  return x > 0 ? "inf" : "-inf";
}

std::string csv_cell(const Json& v) {
  std::string s;
  if (v.is_string())
    s = v.get<std::string>();
  else if (v.is_number_float())
    s = format_double(v.get<double>());
  else
    s = v.dump();
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string q = "\"";
  for (char c : s) {
    if (c == '"') q += '"';
    q += c;
  }
  return q + "\"";
}

void csv_block(std::string& out, const std::string& title, const Json& rows) {
  std::vector<std::string> cols;
  for (const auto& row : rows)
    for (const auto& [k, v] : row.items())
      if (std::find(cols.begin(), cols.end(), k) == cols.end()) cols.push_back(k);
  out += "# " + title + "\n";
  for (std::size_t i = 0; i < cols.size(); ++i) out += (i ? "," : "") + cols[i];
  out += "\n";
  for (const auto& row : rows) {
    for (std::size_t i = 0; i < cols.size(); ++i) {
      if (i) out += ",";
      if (row.contains(cols[i])) out += csv_cell(row[cols[i]]);
    }
    out += "\n";
  }
}

}  // namespace

Report::Report(std::string command, std::vector<std::string> argv)
    : command_(std::move(command)), argv_(std::move(argv)) {}

void Report::add_row(const std::string& table, Json row, double residual, double tolerance) {
  const bool ok = within(residual, tolerance);
  row["residual"] = number(residual);
  row["tolerance"] = number(tolerance);
  row["pass"] = ok;
  pass_ = pass_ && ok;
  tables_[table].push_back(std::move(row));
}

void Report::add_check(const std::string& name, double residual, double tolerance) {
  const bool ok = within(residual, tolerance);
  checks_.push_back(Json{{"name", name}, {"residual", number(residual)}, {"tolerance", number(tolerance)}, {"pass", ok}});
  pass_ = pass_ && ok;
}

void Report::add_check(const std::string& name, bool holds, const std::string& detail) {
  Json c{{"name", name}, {"residual", holds ? 0 : 1}, {"tolerance", 0}, {"pass", holds}};
  if (!detail.empty()) c["detail"] = detail;
  checks_.push_back(std::move(c));
  pass_ = pass_ && holds;
}

void Report::add_timing(const std::string& phase, double seconds) {
  timings_[phase] = timings_.contains(phase) ? timings_[phase].get<double>() + seconds : seconds;
}

bool Report::pass() const { return pass_; }

Json Report::to_json(bool with_timings) const {
  Json j;
  j["command"] = command_;
  j["argv"] = argv_;
  j["config"] = config_;
  j["summary"] = summary_;
  j["tables"] = tables_;
  j["checks"] = checks_;
  j["pass"] = pass_;
  if (with_timings) j["timings_s"] = timings_;
  return j;
}

std::string Report::to_csv() const {
  std::string out = "# command," + command_ + "\n# pass," + (pass_ ? "true" : "false") + "\n";
  for (const auto& [name, rows] : tables_.items()) csv_block(out, "table " + name, rows);
  csv_block(out, "checks", checks_);
  return out;
}

void atomic_write(const std::filesystem::path& path, const std::string& bytes) {
  namespace fs = std::filesystem;
  const fs::path dir = path.has_parent_path() ? path.parent_path() : fs::path(".");
  std::error_code ec;
  fs::create_directories(dir, ec);
  std::random_device rd;
  const fs::path tmp = dir / ("." + path.filename().string() + ".tmp" + std::to_string(rd()));
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error("cannot write " + tmp.string());
    out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
    out.flush();
    if (!out) {
      fs::remove(tmp, ec);
      throw Error("write failed: " + tmp.string());
    }
  }
  fs::rename(tmp, path, ec);
  if (ec) {
    fs::remove(tmp, ec);
    throw Error("cannot rename onto " + path.string());
  }
}

std::string format_double(double x) {
  char buf[32];
  const auto r = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, r.ptr);
}

}  // namespace zetalab::cli
