#include <fstream>
#include <iostream>
#include <memory>
#include <random>
#include <sstream>

#include "context.hpp"
#include "zetalab/error.hpp"
#include "zetalab/witt.hpp"

namespace zetalab::cli {

namespace {

using hp::Complex;
using hp::Real;

std::string read_input(const std::string& path) {
  std::ostringstream ss;
  if (path == "-") {
    ss << std::cin.rdbuf();
  } else {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("cannot read " + path);
    ss << in.rdbuf();
  }
  return ss.str();
}

// Tr(T^j) from the dense embedding against sum_r c_r e(j r), j = 1..n. Equal
// power sums for j <= n fix the multiset of nonzero eigenvalues.
void power_sum_rows(Report& r, const MonoidMatrix& t, const Divisor& d, int bits) {
  const std::size_t n = t.dim();
  const auto m = t.embed(bits);
  std::vector<Complex> p = m;
  const double tol = std::ldexp(static_cast<double>(n), -(bits - 16));
  for (std::size_t j = 1; j <= n; ++j) {
    Complex tr = Complex::zero(bits);
    for (std::size_t i = 0; i < n; ++i) tr += p[i * n + i];
    Complex ds = Complex::zero(bits);
    for (const auto& [root, c] : d.terms()) {
      Complex z = root.times(mpz_class(static_cast<unsigned long>(j))).embed(bits);
      z *= Real(c.get_si());
      ds += z;
    }
    r.add_row("power_sums",
              Json{{"j", j}, {"trace", tr.to_string(digits_for(bits))}, {"divisor", ds.to_string(digits_for(bits))}},
              hp::abs(tr - ds).to_double(), tol);
    if (j == n) break;
    std::vector<Complex> next(n * n, Complex::zero(bits));
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t b = 0; b < n; ++b) {
        if (p[a * n + b].is_zero()) continue;
        for (std::size_t c = 0; c < n; ++c)
          if (!m[b * n + c].is_zero()) next[a * n + c] += p[a * n + b] * m[b * n + c];
      }
    p = std::move(next);
  }
}

void register_tau(CLI::App& app, Context& ctx) {
  struct Opts {
    std::string matrix, input;
    bool plain = false;
  };
  auto o = std::make_shared<Opts>();
  auto* sub = app.add_subcommand("tau", "Universal invariant of a column-monomial matrix");
  auto* m = sub->add_option("--matrix", o->matrix, R"(JSON such as {"n":2,"cols":{"1":[2,"1/4"],"2":[1,"1/3"]}})");
  sub->add_option("--input", o->input, "Read the JSON from a file, or - for stdin")->excludes(m);
  sub->add_flag("--plain", o->plain, "Print only the divisor instead of a report");
  ctx.on(sub, [&ctx, o] {
    if (o->matrix.empty() && o->input.empty()) throw ParseError("tau needs --matrix or --input");
    const std::string text = o->matrix.empty() ? read_input(o->input) : o->matrix;
    auto& r = ctx.start("tau");
    const MonoidMatrix t = MonoidMatrix::from_json(text);
    r.config()["matrix"] = Json::parse(t.to_json());
    Divisor d;
    {
      PhaseTimer timer(r, "tau");
      d = tau(t);
    }
    r.summary()["divisor"] = d.to_string();
    r.summary()["mass"] = d.mass().get_str();
    if (o->plain) ctx.plain = d.to_string();
    PhaseTimer timer(r, "power_sums");
    if (t.dim() > 0) power_sum_rows(r, t, d, ctx.precision);
  });
}

void register_bc(CLI::App& app, Context& ctx) {
  struct Opts {
    std::size_t max_dim = 2;
    long max_den = 6;
    int random = 10000;
    std::size_t random_dim = 8;
    long random_den = 12;
    unsigned n_max = 6;
  };
  auto o = std::make_shared<Opts>();
  auto* sub = app.add_subcommand("bc-check", "tau(F_n T) = sigma_n(tau T) and tau(V_n T) = rho~_n(tau T), exactly");
  sub->add_option("--max-dim", o->max_dim, "Exhaustive: dimension bound")->check(CLI::Range(1, 3));
  sub->add_option("--max-den", o->max_den, "Exhaustive: denominator bound")->check(CLI::Range(1, 24));
  sub->add_option("--random", o->random, "Number of random matrices")->check(CLI::NonNegativeNumber);
  sub->add_option("--random-dim", o->random_dim, "Random: dimension bound")->check(CLI::Range(1, 64));
  sub->add_option("--random-den", o->random_den, "Random: denominator bound")->check(CLI::Range(1, 1000));
  sub->add_option("--n-max", o->n_max, "Largest n for F_n and V_n")->check(CLI::Range(1, 24));
  ctx.on(sub, [&ctx, o] {
    auto& r = ctx.start("bc-check");
    r.config()["max_dim"] = o->max_dim;
    r.config()["max_den"] = o->max_den;
    r.config()["random"] = o->random;
    r.config()["random_dim"] = o->random_dim;
    r.config()["random_den"] = o->random_den;
    r.config()["n_max"] = o->n_max;

    auto relations = [&](const MonoidMatrix& t, std::string& first_failure) {
      long bad = 0;
      const Divisor d = tau(t);
      for (unsigned n = 1; n <= o->n_max; ++n) {
        const bool f = tau(frobenius(n, t)) == sigma(n, d);
        const bool v = tau(verschiebung(n, t)) == rho_tilde(n, d);
        if ((!f || !v) && first_failure.empty())
          first_failure = t.to_json() + (f ? " V_" : " F_") + std::to_string(n);
        bad += !f + !v;
      }
      return bad;
    };

    {
      PhaseTimer timer(r, "exhaustive");
      const auto corpus = enumerate_monoid_matrices(o->max_dim, o->max_den);
      long bad = 0;
      std::string first;
      for (const auto& t : corpus) bad += relations(t, first);
      Json row{{"family", "exhaustive"}, {"matrices", corpus.size()}, {"relations", corpus.size() * 2 * o->n_max},
               {"mismatches", bad}};
      if (!first.empty()) row["first_failure"] = first;
      r.add_row("relations", row, static_cast<double>(bad), 0);
    }
    std::mt19937_64 rng(ctx.seed);
    std::uniform_int_distribution<std::size_t> dim(1, o->random_dim);
    {
      PhaseTimer timer(r, "random");
      long bad = 0;
      std::string first;
      for (int i = 0; i < o->random; ++i) bad += relations(random_monoid_matrix(rng, dim(rng), o->random_den), first);
      Json row{{"family", "random"}, {"matrices", o->random}, {"relations", 2L * o->random * o->n_max},
               {"mismatches", bad}};
      if (!first.empty()) row["first_failure"] = first;
      r.add_row("relations", row, static_cast<double>(bad), 0);
    }
    {
      // tau is a ring map: direct sums add, tensor products multiply.
      PhaseTimer timer(r, "ring");
      const int pairs = std::max(1, o->random / 10);
      long bad_sum = 0, bad_prod = 0;
      for (int i = 0; i < pairs; ++i) {
        const auto a = random_monoid_matrix(rng, dim(rng), o->random_den);
        const auto b = random_monoid_matrix(rng, dim(rng), o->random_den);
        bad_sum += tau(wedge(a, b)) != tau(a) + tau(b);
        bad_prod += tau(smash(a, b)) != tau(a) * tau(b);
      }
      r.add_row("ring", Json{{"relation", "tau(T1 + T2) = tau T1 + tau T2"}, {"pairs", pairs}, {"mismatches", bad_sum}},
                static_cast<double>(bad_sum), 0);
      r.add_row("ring",
                Json{{"relation", "tau(T1 x T2) = tau T1 * tau T2"}, {"pairs", pairs}, {"mismatches", bad_prod}},
                static_cast<double>(bad_prod), 0);
    }
  });
}

void register_fourier(CLI::App& app, Context& ctx) {
  struct Opts {
    std::size_t n_max = 24;
    int tolerance_log2 = -200;
  };
  auto o = std::make_shared<Opts>();
  auto* sub = app.add_subcommand("fourier-check", "Delta V = V C, C W = W Delta exactly; V W = n I numerically");
  sub->add_option("--n-max", o->n_max, "Check n = 1..n_max")->check(CLI::Range(1, 64));
  sub->add_option("--tolerance-log2", o->tolerance_log2, "Tolerance 2^t for |V W - n I|");
  ctx.on(sub, [&ctx, o] {
    auto& r = ctx.start("fourier-check");
    r.config()["n_max"] = o->n_max;
    r.config()["tolerance_log2"] = o->tolerance_log2;
    const double tol = std::ldexp(1.0, o->tolerance_log2);
    for (std::size_t n = 1; n <= o->n_max; ++n) {
      const auto f = fourier_pair(n);
      bool dv, cw;
      {
        PhaseTimer timer(r, "exact");
        dv = f.Delta * f.V == f.V * f.C;
        cw = f.C * f.W == f.W * f.Delta;
      }
      r.add_row("exact", Json{{"n", n}, {"relation", "Delta V = V C"}, {"holds", dv}}, dv ? 0 : 1, 0);
      r.add_row("exact", Json{{"n", n}, {"relation", "C W = W Delta"}, {"holds", cw}}, cw ? 0 : 1, 0);
      PhaseTimer timer(r, "embedded");
      const Real defect = fourier_inverse_defect(f, ctx.precision);
      r.add_row("inverse", Json{{"n", n}, {"max_abs_VW_minus_nI", defect.to_string(6)}}, defect.to_double(), tol);
    }
  });
}

}  // namespace

void register_arith(CLI::App& app, Context& ctx) {
  register_tau(app, ctx);
  register_bc(app, ctx);
  register_fourier(app, ctx);
}

}  // namespace zetalab::cli
