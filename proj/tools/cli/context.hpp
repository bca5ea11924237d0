#pragma once

#include <cstdint>
#include <filesystem>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "report.hpp"
#include "zetalab/zero_table.hpp"

namespace zetalab::cli {

// Global configuration shared by all subcommands.
struct Context {
  int precision = 256;
  std::uint64_t seed = 20240917;
  std::string zeros;
  std::filesystem::path cache_dir;
  std::vector<std::string> argv;
  std::optional<Report> report;
  // When set, printed instead of the report (exit status still follows it).
  std::string plain;
  // Subcommand actions, run after parsing so that global flags given after
  // the subcommand name are already in place.
  std::vector<std::pair<CLI::App*, std::function<void()>>> actions;

  void on(CLI::App* sub, std::function<void()> action) { actions.emplace_back(sub, std::move(action)); }

  Report& start(const std::string& command);
  // The configured zero table; its source and digest go into the report.
  ZeroTable zero_table();
};

void register_arith(CLI::App& app, Context& ctx);     // tau, bc-check, fourier-check
void register_weil(CLI::App& app, Context& ctx);      // explicit-formula, weil-gram, prolate
void register_scaling(CLI::App& app, Context& ctx);   // dirac-spectrum
void register_semilocal(CLI::App& app, Context& ctx); // semilocal-check, tate-check, lift-check
void register_qcalc(CLI::App& app, Context& ctx);     // schwarzian, main-lemma, sonin

// "a:b" or "a:b:step" with a <= b and step > 0, inclusive of b up to
// rounding. ParseError otherwise.
std::vector<double> parse_range(const std::string& spec);
std::vector<int> parse_int_range(const std::string& spec);
// Comma-separated list.
std::vector<double> parse_list(const std::string& spec);
// A range if spec contains ':', else a list.
std::vector<double> parse_grid(const std::string& spec);

// Decimal digits carried by `bits` binary digits, for text output.
int digits_for(int bits);

}  // namespace zetalab::cli
