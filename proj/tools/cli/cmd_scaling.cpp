#include <cmath>
#include <filesystem>
#include <memory>

#include "context.hpp"
#include "plot.hpp"
#include "zetalab/error.hpp"
#include "zetalab/scaling/dirac.hpp"

namespace zetalab::cli {

namespace {

Json report_row(const scaling::SpectralReport& s) {
  return Json{{"k", s.k},
              {"basis_size", s.basis_size},
              {"leading_within_1pct", s.leading_within_1pct},
              {"matched_prefix", s.matched_prefix},
              {"matched_total", s.matched_total},
              {"mean_abs_error_20", s.mean_abs_error_20},
              {"lowest_positive", s.positive.empty() ? Json(nullptr) : Json(s.positive.front())},
              {"match_ceiling", s.match_ceiling},
              {"projection_rank_gap", s.projection_rank_gap}};
}

void write_plot(const std::string& path, const scaling::SpectralReport& s, const std::vector<double>& zeros) {
  Series ord{"zero ordinates", "#1f77b4", {}, {}};
  Series eig{"positive eigenvalues", "#d62728", {}, {}};
  for (std::size_t i = 0; i < zeros.size() && zeros[i] <= s.match_ceiling; ++i) {
    ord.x.push_back(static_cast<double>(i + 1));
    ord.y.push_back(zeros[i]);
  }
  for (std::size_t i = 0; i < s.positive.size() && s.positive[i] <= s.match_ceiling; ++i) {
    eig.x.push_back(static_cast<double>(i + 1));
    eig.y.push_back(s.positive[i]);
  }
  const std::vector<Series> series{ord, eig};
  const std::string title = "D(lambda, k) at lambda = " + format_double(s.lambda) + ", k = " + std::to_string(s.k);
  atomic_write(path, svg_plot(title, "rank", "value", series));
  std::filesystem::path dat(path);
  dat.replace_extension(".dat");
  atomic_write(dat, "# " + title + "\n" + dat_file(series));
}

void register_dirac(CLI::App& app, Context& ctx) {
  struct Opts {
    double lambda = 4.5;
    std::string k_sweep = "8:24";
    int basis = 201;
    std::string basis_sweep;
    std::string mode = "direct";
    int pswf_bits = 128;
    std::size_t max_zeros = 200;
    std::string plot;
  };
  auto o = std::make_shared<Opts>();
  auto* sub = app.add_subcommand("dirac-spectrum", "Spectrum of D(lambda, k) against zero ordinates");
  sub->add_option("--lambda", o->lambda, "Scale lambda > 1")->check(CLI::PositiveNumber);
  sub->add_option("--k-sweep", o->k_sweep, "Range of k, a:b or a:b:step");
  sub->add_option("--basis", o->basis, "Number of log-Fourier modes (odd)")->check(CLI::Range(9, 4001));
  sub->add_option("--basis-sweep", o->basis_sweep,
                  "Comma list of basis sizes at the best k; mean error over 20 zeros must not increase");
  sub->add_option("--mode", o->mode, "Evaluation of E on [1/lambda, 1)")->check(CLI::IsMember({"direct", "poisson"}));
  sub->add_option("--pswf-bits", o->pswf_bits, "Precision of the prolate coefficients")->check(CLI::Range(64, 4096));
  sub->add_option("--max-zeros", o->max_zeros, "Ordinates read from the table")->check(CLI::Range(20, 100000));
  sub->add_option("--plot", o->plot, "SVG of the best spectrum; a .dat is written alongside");
  ctx.on(sub, [&ctx, o] {
    auto& r = ctx.start("dirac-spectrum");
    r.config()["lambda"] = o->lambda;
    r.config()["k_sweep"] = o->k_sweep;
    r.config()["basis"] = o->basis;
    r.config()["mode"] = o->mode;
    r.config()["pswf_bits"] = o->pswf_bits;
    r.config()["max_zeros"] = o->max_zeros;
    const auto ks = parse_int_range(o->k_sweep);
    const auto table = ctx.zero_table();
    std::vector<double> zeros;
    for (std::size_t i = 0; i < std::min(o->max_zeros, table.size()); ++i) zeros.push_back(std::stod(table.ordinates[i]));
    const auto mode = o->mode == "poisson" ? scaling::EMode::PoissonDual : scaling::EMode::Direct;
    const double tol = 1e-9;

    scaling::SweepResult sweep;
    {
      PhaseTimer t(r, "sweep");
      sweep = scaling::dirac_sweep(o->lambda, ks, o->basis, zeros, o->pswf_bits, mode);
    }
    for (const auto& s : sweep.reports) r.add_row("sweep", report_row(s), s.max_residual, tol);
    const auto& best = sweep.reports[sweep.best];
    r.summary()["best_k"] = best.k;
    r.summary()["leading_within_1pct"] = best.leading_within_1pct;
    r.summary()["matched_total"] = best.matched_total;
    r.summary()["matched_prefix"] = best.matched_prefix;
    r.summary()["mean_abs_error_20"] = best.mean_abs_error_20;
    // Each pairing is a claim |eigenvalue - ordinate| < greedy threshold.
    for (const auto& m : best.matches)
      r.add_row("best_matches",
                Json{{"zero_index", m.zero_index}, {"ordinate", m.ordinate}, {"eigenvalue", m.eigenvalue},
                     {"rel_error", m.rel_error}},
                m.abs_error, 0.5);
    if (!o->basis_sweep.empty()) {
      PhaseTimer t(r, "basis_sweep");
      double prev = INFINITY;
      for (double b : parse_list(o->basis_sweep)) {
        const auto s = scaling::dirac_spectrum(o->lambda, best.k, static_cast<int>(b), zeros, o->pswf_bits, mode);
        r.add_row("basis_sweep", report_row(s), s.max_residual, tol);
        r.add_check("mean_abs_error_20 nonincreasing at basis " + std::to_string(static_cast<int>(b)),
                    std::max(0.0, s.mean_abs_error_20 - prev), 1e-9);
        prev = s.mean_abs_error_20;
      }
    }
    if (!o->plot.empty()) {
      PhaseTimer t(r, "plot");
      write_plot(o->plot, best, zeros);
      r.summary()["plot"] = o->plot;
    }
  });
}

}  // namespace

void register_scaling(CLI::App& app, Context& ctx) { register_dirac(app, ctx); }

}  // namespace zetalab::cli
