// End-to-end acceptance run. Prints one PASS/FAIL line per criterion and a
// summary. Criteria listed in --expect-fail are still run and still print
// FAIL when they fail; they only stop a known, documented gap from failing the
// whole run. An expected failure that passes is reported as such.

#include <chrono>
#include <cmath>
#include <functional>
#include <iomanip>
#include <iostream>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "cli/commands.hpp"
#include "witt_oracle.hpp"
#include "zetalab/semilocal.hpp"
#include "zetalab/weil/log_band.hpp"

namespace {

using nlohmann::json;
using zetalab::hp::Real;
namespace hp = zetalab::hp;

struct Verdict {
  bool pass = false;
  std::string detail;
};

struct CliRun {
  int code;
  json report;
  std::string err;
};

std::string zeros_path;

CliRun cli(std::vector<std::string> args) {
  args.push_back("--no-timings");
  if (!zeros_path.empty()) {
    args.push_back("--zeros");
    args.push_back(zeros_path);
  }
  std::ostringstream out, err;
  const int code = zetalab::cli::run(args, out, err);
  CliRun r{code, nullptr, err.str()};
  if (!out.str().empty()) r.report = json::parse(out.str(), nullptr, false);
  return r;
}

// Number of failing rows and checks in a report, for diagnostics.
int failures(const json& report) {
  int n = 0;
  if (report.contains("tables"))
    for (const auto& [name, rows] : report["tables"].items())
      for (const auto& row : rows) n += row.value("pass", true) ? 0 : 1;
  if (report.contains("checks"))
    for (const auto& c : report["checks"]) n += c.value("pass", true) ? 0 : 1;
  return n;
}

double max_residual(const json& report, const std::string& table) {
  double m = 0;
  for (const auto& row : report["tables"][table]) {
    const auto& v = row["residual"];
    m = std::max(m, v.is_number() ? v.get<double>() : INFINITY);
  }
  return m;
}

std::string sci(double x, int digits = 3) {
  std::ostringstream s;
  s.precision(digits);
  s << std::scientific << x;
  return s.str();
}

// Runs a command, requiring exit code 0 and report pass; appends a short note.
bool command_passes(const std::vector<std::string>& args, std::string& note, CliRun* keep = nullptr) {
  auto r = cli(args);
  const bool ok = r.code == 0 && r.report.is_object() && r.report.value("pass", false);
  if (!ok) {
    note += args.front() + " exit " + std::to_string(r.code);
    if (r.report.is_object()) note += ", " + std::to_string(failures(r.report)) + " failing rows";
    if (!r.err.empty()) note += ", " + r.err.substr(0, r.err.find('\n'));
    note += "; ";
  }
  if (keep) *keep = std::move(r);
  return ok;
}

Verdict bc_exactness() {
  const auto t0 = std::chrono::steady_clock::now();
  CliRun r;
  std::string note;
  const bool ok = command_passes({"bc-check", "--max-dim", "2", "--max-den", "6", "--random", "10000", "--random-dim",
                                  "8", "--n-max", "6"},
                                 note, &r);
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  std::size_t matrices = 0;
  long mismatches = 0;
  if (r.report.is_object())
    for (const auto& row : r.report["tables"]["relations"]) {
      matrices += row.value("matrices", 0);
      mismatches += row.value("mismatches", 0L);
    }
  note += std::to_string(matrices) + " matrices, " + std::to_string(mismatches) + " mismatches, " +
          sci(secs, 2) + " s (limit 60 s)";
  return {ok && mismatches == 0 && secs < 60, note};
}

Verdict oracle_equivalence() {
  std::mt19937_64 rng(20240917);
  int mismatches = 0;
  double worst_snap = 0;
  for (int i = 0; i < 1000; ++i) {
    const auto t = zetalab::random_monoid_matrix(rng, 1 + static_cast<std::size_t>(i % 8), 12);
    const auto o = zetalab::testing::eigen_oracle(t, 128);
    worst_snap = std::max(worst_snap, o.max_snap_error);
    mismatches += o.divisor == zetalab::tau(t) ? 0 : 1;
  }
  return {mismatches == 0,
          "1000 matrices, " + std::to_string(mismatches) + " mismatches, worst snap " + sci(worst_snap)};
}

Verdict fourier_relations() {
  CliRun r;
  std::string note;
  const bool ok = command_passes({"fourier-check", "--n-max", "24", "--tolerance-log2", "-200"}, note, &r);
  if (r.report.is_object())
    note += "exact rows " + std::to_string(r.report["tables"]["exact"].size()) + ", max |VW - nI| " +
            sci(max_residual(r.report, "inverse")) + " (limit 2^-200 = " + sci(std::ldexp(1.0, -200)) + ")";
  return {ok, note};
}

Verdict explicit_formula() {
  CliRun r;
  std::string note;
  const bool ok = command_passes({"--precision", "256", "explicit-formula", "--lambda", "2", "--functions", "5",
                                  "--counts", "100,1000,10000", "--tolerance", "1e-8"},
                                 note, &r);
  if (r.report.is_object() && r.report.contains("tables")) {
    std::map<int, double> worst;  // zero count -> largest residual over the functions
    for (const auto& row : r.report["tables"]["residuals"]) {
      double& w = worst[row.value("zeros", 0)];
      w = std::max(w, row["residual"].get<double>());
    }
    note += "max residual by zero count:";
    for (const auto& [count, res] : worst) note += " " + std::to_string(count) + ": " + sci(res);
    note += " (limit 1e-8 at 10^4, decreasing per function)";
  }
  return {ok, note};
}

double smallest_positive(const std::vector<std::string>& args, std::string& note) {
  CliRun r;
  if (!command_passes(args, note, &r)) return NAN;
  const auto& v = r.report["summary"]["smallest_positive"];
  return v.is_string() ? std::stod(v.get<std::string>()) : NAN;
}

Verdict minuscule_eigenvalue() {
  std::string note;
  const double base =
      smallest_positive({"--precision", "512", "weil-gram", "--lambda2", "11", "--K", "64", "--show", "4"}, note);
  const double wider =
      smallest_positive({"--precision", "512", "weil-gram", "--lambda2", "11", "--K", "80", "--show", "4"}, note);
  const double finer =
      smallest_positive({"--precision", "1024", "weil-gram", "--lambda2", "11", "--K", "64", "--show", "4"}, note);
  const double target = 2.389e-48;
  const bool magnitude = base > target / 10 && base < target * 10;
  // Three significant digits: relative change below 5e-4.
  const double dk = std::abs(wider / base - 1), dp = std::abs(finer / base - 1);
  note += "K=64: " + sci(base) + " (target 2.389e-48 within x10), K=80: " + sci(wider) + " (rel change " + sci(dk, 2) +
          "), 1024 bits: " + sci(finer) + " (rel change " + sci(dp, 2) + "), limit 5e-4";
  return {magnitude && dk < 5e-4 && dp < 5e-4, note};
}

Verdict dirac_spectrum() {
  std::string note;
  int best_leading = -1, best_matched = -1;
  std::string best_at;
  bool all_ok = true;
  for (const char* lambda : {"4", "4.25", "4.5", "4.75", "5"}) {
    CliRun r;
    all_ok &= command_passes({"dirac-spectrum", "--lambda", lambda, "--k-sweep", "8:40", "--basis", "201"}, note, &r);
    if (!r.report.is_object() || !r.report.contains("summary")) continue;
    const auto& s = r.report["summary"];
    const int leading = s.value("leading_within_1pct", 0), matched = s.value("matched_total", 0);
    if (leading > best_leading || (leading == best_leading && matched > best_matched)) {
      best_leading = leading;
      best_matched = matched;
      best_at = std::string("lambda ") + lambda + ", k " + std::to_string(s.value("best_k", 0));
    }
  }
  // Matching quality must not degrade as the circle basis grows.
  const bool monotone = command_passes(
      {"dirac-spectrum", "--lambda", "4.5", "--k-sweep", "8:40", "--basis", "201", "--basis-sweep", "101,151,201,251"},
      note);
  note += "best " + best_at + ": leading within 1% " + std::to_string(best_leading) + " (need 20), matched " +
          std::to_string(best_matched) + " (need 31), basis monotone " + (monotone ? "yes" : "no");
  return {all_ok && monotone && best_leading >= 20 && best_matched >= 31, note};
}

Verdict lift() {
  CliRun r;
  std::string note;
  const bool ok = command_passes({"lift-check", "--mu", "4,9", "--cases", "20", "--tolerance", "1e-25"}, note, &r);
  if (r.report.is_object())
    note += std::to_string(r.report["tables"]["lift"].size()) + " cases, max residual " +
            sci(max_residual(r.report, "lift")) + " (limit 1e-25)";
  return {ok, note};
}

Verdict functional_equation() {
  CliRun r;
  std::string note;
  bool ok = command_passes({"semilocal-check", "--s-grid", "0.5,1,2,5,10", "--ratio-tolerance", "1e-25",
                            "--unit-tolerance", "1e-30"},
                           note, &r);
  if (r.report.is_object())
    note += "max ratio residual " + sci(max_residual(r.report, "functional_equation")) + " (limit 1e-25); ";
  hp::PrecisionScope scope(256);
  std::mt19937_64 rng(20240917);
  std::uniform_real_distribution<double> U(-60, 60);
  Real worst(0);
  for (int i = 0; i < 100; ++i)
    worst = hp::max(worst, hp::abs(hp::abs(zetalab::semilocal::u_arch(Real(U(rng)))) - Real(1)));
  ok &= worst < Real(1e-30);
  note += "100 random s: max ||u(s)| - 1| " + sci(worst.to_double()) + " (limit 1e-30)";
  return {ok, note};
}

Verdict schwarzian() {
  std::string note;
  bool ok = true;
  double worst = 0;
  for (const char* f : {"exp", "cubic", "mobius"}) {
    CliRun r;
    ok &= command_passes({"schwarzian", "--function", f, "--x", "-0.9:0.9:0.2", "--tolerance", "1e-6",
                          "--zero-tolerance", "1e-6"},
                         note, &r);
    if (r.report.is_object() && std::string(f) != "mobius") worst = std::max(worst, max_residual(r.report, "schwarzian"));
    if (r.report.is_object() && std::string(f) == "mobius")
      note += "mobius max |6 omega| " + sci(max_residual(r.report, "schwarzian")) + " (limit 1e-6); ";
  }
  // Second-order convergence, seen where truncation dominates rounding. The
  // coarse step is a probe of the order, so only the order is judged here.
  const CliRun o = cli({"schwarzian", "--function", "exp", "--x", "0.3", "--step", "1e-2"});
  const double order = o.report.is_object() ? o.report["tables"]["schwarzian"][0].value("observed_order", 0.0) : 0.0;
  ok &= std::abs(order - 2) < 0.2;
  note += "exp, cubic max relative error " + sci(worst) + " (limit 1e-6), observed order " + sci(order, 3);
  return {ok, note};
}

Verdict main_lemma() {
  std::string note;
  bool ok = true;
  for (int k = 1; k <= 5; ++k)
    ok &= command_passes({"main-lemma", "--model", "shift", "--power", std::to_string(k), "--N", "200"}, note);
  note += "k = 1..5, N = 200, lhs = rhs and rhs >= 0";
  return {ok, note};
}

Verdict positivity() {
  std::string note;
  bool ok = true;
  for (const char* l2 : {"1.5", "2"})
    ok &= command_passes({"weil-gram", "--lambda2", l2, "--K", "16", "--constrained"}, note);
  CliRun r;
  ok &= command_passes({"sonin", "--count", "20"}, note, &r);
  double worst = INFINITY;
  if (r.report.is_object())
    for (const auto& row : r.report["tables"]["positivity"]) worst = std::min(worst, row["margin"].get<double>());
  note += "constrained Gram at lambda^2 = 1.5, 2 above -residual; sonin minimum margin " + sci(worst) +
          " over 20 functions (limit -1e-8)";
  return {ok, note};
}

Verdict arch_trace() {
  namespace sl = zetalab::semilocal;
  hp::PrecisionScope scope(128);
  const Real cutoff(400);
  const Real kappa = sl::calibrate_arch_trace(zetalab::weil::raised_cosine(hp::sqrt(Real(7)), 4, 0), cutoff);
  Real worst(0);
  for (auto [l2, m] : {std::pair{5, 1}, {7, 2}, {11, 0}, {11, 3}, {13, 1}}) {
    const auto r = sl::arch_trace_check(zetalab::weil::raised_cosine(hp::sqrt(Real(l2)), 4, m), kappa, cutoff);
    worst = hp::max(worst, r.residual);
  }
  return {worst < Real(1e-15),
          "kappa " + kappa.to_string(8) + ", max residual over 5 functions " + sci(worst.to_double()) + " (limit 1e-15)"};
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app("zetalab acceptance criteria");
  std::vector<int> expect_fail, only;
  app.add_option("--expect-fail", expect_fail, "Criteria with a documented, known failure")->delimiter(',');
  app.add_option("--only", only, "Run only these criteria")->delimiter(',');
  app.add_option("--zeros", zeros_path, "Zero table for the explicit formula and Dirac spectrum");
  CLI11_PARSE(app, argc, argv);

  const std::vector<std::pair<const char*, std::function<Verdict()>>> criteria{
      {"Witt/BC relations exact", bc_exactness},
      {"eigenvalue oracle equals tau", oracle_equivalence},
      {"Fourier relations and V W = n I", fourier_relations},
      {"explicit formula with 10^4 zeros", explicit_formula},
      {"minuscule eigenvalue at lambda^2 = 11", minuscule_eigenvalue},
      {"Dirac spectrum against zeros", dirac_spectrum},
      {"semilocal lift", lift},
      {"functional-equation unitary", functional_equation},
      {"Schwarzian from the quantized differential", schwarzian},
      {"main lemma in the shift model", main_lemma},
      {"positivity probes", positivity},
      {"archimedean trace", arch_trace},
  };
  const std::set<int> expected(expect_fail.begin(), expect_fail.end()), selected(only.begin(), only.end());

  int passed = 0, failed = 0, known = 0;
  bool unexpected = false;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const int id = static_cast<int>(i) + 1;
    if (!selected.empty() && !selected.contains(id)) continue;
    const auto t0 = std::chrono::steady_clock::now();
    Verdict v;
    try {
      v = criteria[i].second();
    } catch (const std::exception& e) {
      v = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    const bool xf = expected.contains(id);
    std::cout << (v.pass ? "PASS" : "FAIL") << " [" << id << "] " << criteria[i].first << ": " << v.detail << " ("
              << std::fixed << std::setprecision(1) << secs << " s)" << std::defaultfloat
              << (xf ? (v.pass ? " [expected to fail, passed]" : " [expected failure]") : "") << std::endl;
    if (v.pass) ++passed;
    else if (xf) ++known;
    else ++failed;
    unexpected |= !v.pass && !xf;
  }
  std::cout << "summary: " << passed << " passed, " << failed << " failed, " << known << " known failures"
            << std::endl;
  return unexpected ? 1 : 0;
}
