#pragma once

#include <chrono>
#include <filesystem>
#include <string>
#include <vector>

#include <json.hpp>

namespace zetalab::cli {

using Json = nlohmann::ordered_json;

// Result of one subcommand. Every table row carries a residual and the
// tolerance it is held to; the report passes iff every row and every check
// is within tolerance.
class Report {
 public:
  Report(std::string command, std::vector<std::string> argv);

  Json& config() { return config_; }
  Json& summary() { return summary_; }

  // Appends `row` to `table` with its residual claim.
  void add_row(const std::string& table, Json row, double residual, double tolerance);
  // A named claim outside any table. `holds` overrides the residual test for
  // claims that are not a single number (exact equalities, orderings).
  void add_check(const std::string& name, double residual, double tolerance);
  void add_check(const std::string& name, bool holds, const std::string& detail = {});

  // Wall-clock time of a phase, in seconds.
  void add_timing(const std::string& phase, double seconds);

  bool pass() const;
  Json to_json(bool with_timings) const;
  // One block per table and one for the checks. Columns are the union of the
  // row keys in first-seen order; nested values are written as JSON text.
  std::string to_csv() const;

 private:
  std::string command_;
  std::vector<std::string> argv_;
  Json config_ = Json::object();
  Json summary_ = Json::object();
  Json tables_ = Json::object();
  Json checks_ = Json::array();
  Json timings_ = Json::object();
  bool pass_ = true;
};

// Measures one phase into a report on destruction.
class PhaseTimer {
 public:
  PhaseTimer(Report& r, std::string phase) : r_(r), phase_(std::move(phase)), t0_(std::chrono::steady_clock::now()) {}
  ~PhaseTimer() {
    r_.add_timing(phase_, std::chrono::duration<double>(std::chrono::steady_clock::now() - t0_).count());
  }
  PhaseTimer(const PhaseTimer&) = delete;
  PhaseTimer& operator=(const PhaseTimer&) = delete;

 private:
  Report& r_;
  std::string phase_;
  std::chrono::steady_clock::time_point t0_;
};

// Writes to a temporary sibling and renames it over `path`, so readers see
// either the old file or the complete new one.
void atomic_write(const std::filesystem::path& path, const std::string& bytes);

// Shortest decimal text that round-trips a double, for deterministic output.
std::string format_double(double x);

}  // namespace zetalab::cli
