#include <cmath>
#include <memory>

#include "context.hpp"
#include "zetalab/error.hpp"
#include "zetalab/scaling/prolate.hpp"
#include "zetalab/weil/explicit.hpp"
#include "zetalab/weil/gram.hpp"

namespace zetalab::cli {

namespace {

using hp::Complex;
using hp::Real;

// Exactly one of --lambda and --lambda2; lambda > 1.
struct LambdaOption {
  std::string lambda, lambda2;

  void add(CLI::App* sub, const std::string& default_lambda2) {
    lambda2 = default_lambda2;
    auto* a = sub->add_option("--lambda", lambda, "Scale lambda > 1");
    auto* b = sub->add_option("--lambda2", lambda2, "lambda^2, parsed exactly")->capture_default_str();
    a->excludes(b);
  }

  Real value(int bits) const {
    const Real l = lambda.empty() ? hp::sqrt(Real::parse(lambda2, bits + 32)) : Real::parse(lambda, bits + 32);
    if (!(l > Real(1))) throw DomainError("lambda must exceed 1");
    return l.at_precision(bits);
  }

  Json describe() const { return lambda.empty() ? Json{{"lambda2", lambda2}} : Json{{"lambda", lambda}}; }
};

weil::ArchRule parse_rule(const std::string& s) {
  return s == "gauss-legendre" ? weil::ArchRule::GaussLegendre : weil::ArchRule::TanhSinh;
}

void register_explicit(CLI::App& app, Context& ctx) {
  struct Opts {
    LambdaOption lambda;
    int functions = 5;
    int power = 4;
    std::string counts = "100,1000,10000";
    double tolerance = 1e-8;
    std::string rule = "tanh-sinh";
  };
  auto o = std::make_shared<Opts>();
  auto* sub = app.add_subcommand("explicit-formula", "Both sides of the explicit formula for smooth test functions");
  o->lambda.add(sub, "4");
  sub->add_option("--functions", o->functions, "Test functions (1 + cos(pi t / L))^p cos(m pi t / L), m = 0..n-1")
      ->check(CLI::Range(1, 64));
  sub->add_option("--power", o->power, "Exponent p; the functions are C^(2p-1)")->check(CLI::Range(1, 16));
  sub->add_option("--counts", o->counts, "Increasing zero counts; the residual must decrease along them");
  sub->add_option("--tolerance", o->tolerance, "Bound on |lhs - rhs| at the largest count");
  sub->add_option("--rule", o->rule, "Archimedean quadrature")->check(CLI::IsMember({"tanh-sinh", "gauss-legendre"}));
  ctx.on(sub, [&ctx, o] {
    auto& r = ctx.start("explicit-formula");
    r.config()["lambda"] = o->lambda.describe();
    r.config()["functions"] = o->functions;
    r.config()["power"] = o->power;
    r.config()["counts"] = o->counts;
    r.config()["tolerance"] = o->tolerance;
    r.config()["rule"] = o->rule;
    std::vector<std::size_t> counts;
    for (double c : parse_list(o->counts)) {
      if (c < 1 || c != std::floor(c) || (!counts.empty() && c <= static_cast<double>(counts.back())))
        throw ParseError("--counts must be increasing positive integers");
      counts.push_back(static_cast<std::size_t>(c));
    }
    const ZeroTable zeros = ctx.zero_table();
    if (counts.back() > zeros.size())
      throw DomainError("zero table has " + std::to_string(zeros.size()) + " ordinates, " +
                        std::to_string(counts.back()) + " requested");
    const Real lambda = o->lambda.value(ctx.precision);
    const int digits = digits_for(ctx.precision);
    for (int m = 0; m < o->functions; ++m) {
      const auto f = weil::raised_cosine(lambda, o->power, m);
      double prev = 0;
      for (std::size_t i = 0; i < counts.size(); ++i) {
        weil::ExplicitFormulaCheck c;
        {
          PhaseTimer t(r, "explicit_formula");
          c = weil::explicit_formula_residual(f, zeros, counts[i], parse_rule(o->rule));
        }
        const double res = c.residual.to_double();
        // The last count meets the absolute tolerance; earlier ones must
        // decrease, the first against the size of the two sides.
        const bool last = i + 1 == counts.size();
        const double scale = std::max(hp::abs(c.lhs).to_double(), hp::abs(c.rhs).to_double());
        const double tol = last ? o->tolerance : (i == 0 ? scale : prev);
        Json row{{"function", m},
                 {"zeros", c.zeros_used},
                 {"lhs", c.lhs.re.to_string(digits)},
                 {"rhs", c.rhs.re.to_string(digits)},
                 {"residual_hp", c.residual.to_string(6)},
                 {"tolerance_kind", last ? "absolute" : (i == 0 ? "scale" : "decrease")}};
        if (i == 0) {
          Json primes = Json::array();
          for (auto p : c.primes) primes.push_back(p);
          row["primes"] = primes;
        }
        r.add_row("residuals", row, res, last || i == 0 ? tol : tol * (1 - 1e-12));
        prev = res;
      }
    }
  });
}

void register_gram(CLI::App& app, Context& ctx) {
  struct Opts {
    LambdaOption lambda;
    int K = 64;
    bool constrained = false;
    int show = 0;
  };
  auto o = std::make_shared<Opts>();
  auto* sub = app.add_subcommand("weil-gram", "Spectrum of the Weil quadratic form on span{psi_-K..psi_K}");
  o->lambda.add(sub, "11");
  sub->add_option("--K", o->K, "Half-width of the log-Fourier basis")->check(CLI::Range(1, 512));
  sub->add_flag("--constrained", o->constrained, "Restrict to the subspace g^(i/2) = g^(-i/2) = 0 first");
  sub->add_option("--show", o->show, "Report only the lowest n eigenvalues (0: all)")->check(CLI::NonNegativeNumber);
  ctx.on(sub, [&ctx, o] {
    auto& r = ctx.start("weil-gram");
    r.config()["lambda"] = o->lambda.describe();
    r.config()["K"] = o->K;
    r.config()["constrained"] = o->constrained;
    const Real lambda = o->lambda.value(ctx.precision);
    weil::WeilGram g;
    {
      PhaseTimer t(r, "assemble");
      g = weil::weil_gram(lambda, o->K, ctx.precision);
    }
    weil::GramSpectrum s;
    {
      PhaseTimer t(r, "eigen");
      s = o->constrained ? weil::constrained_spectrum(g, true) : weil::full_spectrum(g, true);
    }
    Real norm(0);
    for (const auto& v : s.values) norm = hp::max(norm, hp::abs(v));
    const double dim = static_cast<double>(s.dim);
    // Backward-stable bound for a Jacobi eigenpair with 16 guard bits.
    const double tol = std::max(1.0, norm.to_double()) * dim * std::ldexp(1.0, -(ctx.precision - 16));
    const int digits = digits_for(ctx.precision);
    const std::size_t shown = o->show > 0 ? std::min<std::size_t>(o->show, s.values.size()) : s.values.size();
    for (std::size_t i = 0; i < shown; ++i)
      r.add_row("eigenvalues", Json{{"index", i}, {"value", s.values[i].to_string(digits)}},
                s.residuals[i].to_double(), tol);
    r.add_check("quadrature_error", g.quadrature_error, tol);
    // On the pole-free subspace QW is expected to be positive semidefinite.
    if (o->constrained)
      r.add_check("lowest_eigenvalue_above_minus_residual",
                  hp::max(Real(0), -s.values.front() - s.residuals.front()).to_double(), 0);
    std::optional<std::size_t> first_positive;
    std::size_t negatives = 0;
    for (std::size_t i = 0; i < s.values.size(); ++i) {
      if (s.values[i] > s.residuals[i] && !first_positive) first_positive = i;
      negatives += s.values[i] < -s.residuals[i];
    }
    r.summary()["dim"] = s.dim;
    r.summary()["smallest"] = s.values.front().to_string(12);
    r.summary()["smallest_positive"] = first_positive ? Json(s.values[*first_positive].to_string(12)) : Json(nullptr);
    r.summary()["negative_count"] = negatives;
    r.summary()["sweeps"] = s.sweeps;
    r.summary()["quadrature_error"] = g.quadrature_error;
  });
}

void register_prolate(CLI::App& app, Context& ctx) {
  struct Opts {
    LambdaOption lambda;
    int k = 6;
    int K = 32;
  };
  auto o = std::make_shared<Opts>();
  auto* sub = app.add_subcommand("prolate", "Prolate vectors and their Weil quadratic form");
  o->lambda.add(sub, "11");
  sub->add_option("--k", o->k, "Number of prolate vectors")->check(CLI::Range(1, 200));
  sub->add_option("--K", o->K, "Half-width of the log-Fourier basis for QW")->check(CLI::Range(1, 512));
  ctx.on(sub, [&ctx, o] {
    auto& r = ctx.start("prolate");
    r.config()["lambda"] = o->lambda.describe();
    r.config()["k"] = o->k;
    r.config()["K"] = o->K;
    const Real lambda = o->lambda.value(ctx.precision);
    scaling::ProlateBundle b;
    {
      PhaseTimer t(r, "prolate_vectors");
      b = scaling::prolate_vectors(lambda, o->k, ctx.precision);
    }
    std::vector<std::vector<Complex>> coeffs;
    weil::WeilGram g;
    Real lowest;
    {
      PhaseTimer t(r, "weil_gram");
      coeffs = scaling::log_fourier_coefficients(b, o->K);
      g = weil::weil_gram(lambda, o->K, ctx.precision);
      lowest = weil::full_spectrum(g).values.front();
    }
    Json mu = Json::array();
    for (const auto& m : b.pswf_eigenvalues) mu.push_back(m.to_string(12));
    r.summary()["pswf_eigenvalues"] = mu;
    r.summary()["bandwidth_c"] = b.basis.c.to_string(12);
    r.summary()["conditioning"] = b.conditioning.to_string(6);
    r.summary()["gram_lowest_eigenvalue"] = lowest.to_string(12);
    const double tol = std::ldexp(1.0, -ctx.precision / 2);
    r.add_check("orthonormality", b.gram_defect.to_double(), tol);
    for (std::size_t j = 0; j < coeffs.size(); ++j) {
      Real norm2(0);
      for (const auto& c : coeffs[j]) norm2 += hp::norm(c);
      const Real q = weil::quadratic_form(g, coeffs[j]).re;
      const Real rq = q / norm2;
      // A Rayleigh quotient cannot fall below the lowest eigenvalue.
      const Real below = hp::max(Real(0), lowest - rq);
      r.add_row("vectors",
                Json{{"j", j}, {"rayleigh_quotient", rq.to_string(12)}, {"projected_norm2", norm2.to_string(12)}},
                below.to_double(), std::abs(lowest.to_double()) * 1e-6 + tol);
    }
  });
}

}  // namespace

void register_weil(CLI::App& app, Context& ctx) {
  register_explicit(app, ctx);
  register_gram(app, ctx);
  register_prolate(app, ctx);
}

}  // namespace zetalab::cli
