#include "commands.hpp"

#include <chrono>
#include <cmath>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>

#include "context.hpp"
#include "fetch.hpp"
#include "zetalab/error.hpp"
#include "zetalab/hp/real.hpp"

#ifndef ZETALAB_DEFAULT_ZEROS
#define ZETALAB_DEFAULT_ZEROS ""
#endif

namespace zetalab::cli {

Report& Context::start(const std::string& command) {
  report.emplace(command, argv);
  auto& c = report->config();
  c["precision_bits"] = precision;
  c["seed"] = seed;
  return *report;
}

ZeroTable Context::zero_table() {
  if (zeros.empty()) throw DomainError("no zero table configured (--zeros)");
  ZeroTable t;
  {
    PhaseTimer timer(*report, "load_zeros");
    t = load_zero_source(zeros, cache_dir);
  }
  if (t.sha256.empty()) {
    std::ifstream in(zeros, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    t.sha256 = sha256_hex(ss.str());
  }
  auto& c = report->config();
  c["zeros"] = Json{{"source", zeros}, {"sha256", t.sha256}, {"count", t.size()}};
  return t;
}

std::vector<double> parse_range(const std::string& spec) {
  std::vector<double> parts;
  std::stringstream ss(spec);
  std::string item;
  while (std::getline(ss, item, ':')) {
    try {
      std::size_t used = 0;
      parts.push_back(std::stod(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw ParseError("bad range '" + spec + "'");
    }
  }
  if (parts.size() < 2 || parts.size() > 3) throw ParseError("range must be a:b or a:b:step, got '" + spec + "'");
  const double a = parts[0], b = parts[1], step = parts.size() == 3 ? parts[2] : 1.0;
  if (!(a <= b) || !(step > 0)) throw ParseError("empty range '" + spec + "'");
  std::vector<double> out;
  const long n = static_cast<long>(std::floor((b - a) / step + 1e-9));
  for (long i = 0; i <= n; ++i) out.push_back(a + step * static_cast<double>(i));
  return out;
}

std::vector<int> parse_int_range(const std::string& spec) {
  std::vector<int> out;
  for (double v : parse_range(spec)) {
    if (v != std::round(v)) throw ParseError("integer range expected, got '" + spec + "'");
    out.push_back(static_cast<int>(v));
  }
  return out;
}

std::vector<double> parse_list(const std::string& spec) {
  std::vector<double> out;
  std::stringstream ss(spec);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      out.push_back(std::stod(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw ParseError("bad list '" + spec + "'");
    }
  }
  if (out.empty()) throw ParseError("empty list");
  return out;
}

std::vector<double> parse_grid(const std::string& spec) {
  return spec.find(':') != std::string::npos ? parse_range(spec) : parse_list(spec);
}

int digits_for(int bits) { return static_cast<int>(bits * 0.30103) - 2; }

namespace {

void register_fetch(CLI::App& app, Context& ctx) {
  struct Opts {
    std::string url;
    bool refresh = false;
    int timeout = 30;
  };
  auto o = std::make_shared<Opts>();
  auto* sub = app.add_subcommand("fetch-zeros", "Download, validate and cache a zero table");
  sub->add_option("--url", o->url, "http(s) URL of a table, one ordinate per line")->required();
  sub->add_flag("--refresh", o->refresh, "Ignore a cached copy");
  sub->add_option("--timeout", o->timeout, "Connection and read timeout in seconds")->check(CLI::PositiveNumber);
  ctx.on(sub, [&ctx, o] {
    auto& r = ctx.start("fetch-zeros");
    r.config()["url"] = o->url;
    r.config()["cache_dir"] = ctx.cache_dir.string();
    FetchResult f;
    {
      PhaseTimer t(r, "fetch");
      f = fetch_zero_table(o->url, ctx.cache_dir, o->refresh, o->timeout);
    }
    r.summary()["cache_file"] = f.cache_file.string();
    r.summary()["from_cache"] = f.from_cache;
    r.summary()["sha256"] = f.table.sha256;
    r.summary()["count"] = f.table.size();
    r.summary()["first"] = f.table.ordinates.front();
    r.summary()["last"] = f.table.ordinates.back();
    // Validation already ran; record the anchor it enforces.
    const double first = std::stod(f.table.ordinates.front());
    r.add_row("anchor", Json{{"first_ordinate", f.table.ordinates.front()}, {"reference", "14.134725142"}},
              std::abs(first - 14.134725142), 1e-6);
  });
}

int code_for(const std::exception& e) {
  if (dynamic_cast<const DomainError*>(&e)) return kDomain;
  if (dynamic_cast<const ParseError*>(&e) || dynamic_cast<const ValidationError*>(&e)) return kInput;
  if (dynamic_cast<const NetworkError*>(&e)) return kNetwork;
  if (dynamic_cast<const ConvergenceError*>(&e)) return kConvergence;
  return kInternal;
}

const char* category(int code) {
  switch (code) {
    case kDomain: return "domain error";
    case kInput: return "input error";
    case kNetwork: return "network error";
    case kConvergence: return "convergence error";
    default: return "error";
  }
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Context ctx;
  ctx.argv = args;
  ctx.zeros = ZETALAB_DEFAULT_ZEROS;
  ctx.cache_dir = default_cache_dir();
  std::string format = "json", output, cache_dir;
  bool no_timings = false;

  CLI::App app("Numerical experiments around the zeta function and the BC system", "zetalab");
  app.fallthrough();
  app.require_subcommand(1);
  app.add_option("--precision", ctx.precision, "Working precision in bits")->check(CLI::Range(64, 1 << 16));
  app.add_option("--format", format, "Report format")->check(CLI::IsMember({"json", "csv"}));
  app.add_option("--seed", ctx.seed, "Seed for randomized suites");
  app.add_option("--zeros", ctx.zeros, "Zero table: a local path or an http(s) URL");
  app.add_option("--cache-dir", cache_dir, "Cache for fetched tables (default $ZETALAB_CACHE_DIR)");
  app.add_option("--output", output, "Write the report here instead of stdout");
  app.add_flag("--no-timings", no_timings, "Omit wall-clock timings so reports are byte-identical");

  register_arith(app, ctx);
  register_weil(app, ctx);
  register_scaling(app, ctx);
  register_semilocal(app, ctx);
  register_qcalc(app, ctx);
  register_fetch(app, ctx);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kPass : kUsage;
  }
  if (!cache_dir.empty()) ctx.cache_dir = cache_dir;

  std::string command;
  try {
    hp::PrecisionScope scope(static_cast<hp::Precision>(ctx.precision));
    for (auto& [sub, action] : ctx.actions)
      if (sub->parsed()) {
        command = sub->get_name();
        const auto t0 = std::chrono::steady_clock::now();
        action();
        ctx.report->add_timing("total", std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count());
      }
    const Report& r = *ctx.report;
    const std::string text = !ctx.plain.empty() ? ctx.plain + "\n"
                             : format == "csv"  ? r.to_csv()
                                                : r.to_json(!no_timings).dump(2) + "\n";
    if (output.empty())
      out << text;
    else
      atomic_write(output, text);
    if (!r.pass()) err << "zetalab: some residuals exceed their tolerance\n";
    return r.pass() ? kPass : kCheckFailed;
  } catch (const std::exception& e) {
    const int code = code_for(e);
    err << "zetalab: " << category(code) << (command.empty() ? "" : " in " + command) << ": " << e.what() << "\n";
    return code;
  }
}

}  // namespace zetalab::cli
