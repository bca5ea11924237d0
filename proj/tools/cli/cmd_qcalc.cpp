#include <cmath>
#include <memory>
#include <random>

#include "context.hpp"
#include "zetalab/error.hpp"
#include "zetalab/qcalc.hpp"

namespace zetalab::cli {

namespace {

void register_schwarzian(CLI::App& app, Context& ctx) {
  struct Opts {
    std::string function = "exp";
    std::string x = "0.3";
    double h = 1e-4;
    double tolerance = 1e-6;
    double zero_tolerance = 1e-6;
  };
  auto o = std::make_shared<Opts>();
  auto* sub = app.add_subcommand("schwarzian", "6 omega_diag of the quantized differential against S(f)");
  sub->add_option("--function", o->function, "exp, sin, cubic, mobius, mobius:a,b,c,d or poly:c0,c1,...");
  sub->add_option("--x", o->x, "Points: a value, a comma list or a:b:step");
  sub->add_option("--step", o->h, "Finite-difference step h")->check(CLI::PositiveNumber);
  sub->add_option("--tolerance", o->tolerance, "Relative tolerance where S(f) != 0");
  sub->add_option("--zero-tolerance", o->zero_tolerance, "Absolute tolerance on 6 omega_diag where S(f) = 0");
  ctx.on(sub, [&ctx, o] {
    auto& r = ctx.start("schwarzian");
    r.config()["function"] = o->function;
    r.config()["x"] = o->x;
    r.config()["h"] = o->h;
    r.config()["tolerance"] = o->tolerance;
    r.config()["zero_tolerance"] = o->zero_tolerance;
    const auto f = qcalc::parse_function(o->function);
    PhaseTimer t(r, "schwarzian");
    for (double x : parse_grid(o->x)) {
      const auto s = qcalc::schwarzian(f, x, o->h);
      const double S = static_cast<double>(s.value);
      const double six = 6 * static_cast<double>(s.omega_diag);
      const double six_half = 6 * static_cast<double>(s.omega_half);
      Json row{{"function", f.name}, {"x", x}, {"S", S}, {"six_omega_diag", six}, {"six_omega_half_step", six_half}};
      // S = 0 exactly for Moebius maps; the difference is then pure rounding.
      const bool zero = std::abs(S) <= 1e-12;
      if (!zero && std::abs(six_half - S) > 0)
        row["observed_order"] = std::log2(std::abs(six - S) / std::abs(six_half - S));
      row["tolerance_kind"] = zero ? "absolute" : "relative";
      r.add_row("schwarzian", row, zero ? std::abs(six) : std::abs(six / S - 1),
                zero ? o->zero_tolerance : o->tolerance);
    }
  });
}

void register_main_lemma(CLI::App& app, Context& ctx) {
  struct Opts {
    std::string model = "shift";
    int power = 3;
    int N = 200;
    double tolerance = 1e-10;
  };
  auto o = std::make_shared<Opts>();
  auto* sub = app.add_subcommand("main-lemma", "-(1/2) Tr(f U* dU) = Tr(f S~) for triangular unitaries");
  sub->add_option("--model", o->model, "shift: (S*)^k on sites -N..N; identity")
      ->check(CLI::IsMember({"shift", "identity"}));
  sub->add_option("--power", o->power, "k")->check(CLI::Range(1, 1000));
  sub->add_option("--N", o->N, "Sites -N..N")->check(CLI::Range(1, 2000));
  sub->add_option("--tolerance", o->tolerance, "|lhs - rhs|");
  ctx.on(sub, [&ctx, o] {
    auto& r = ctx.start("main-lemma");
    r.config()["model"] = o->model;
    r.config()["power"] = o->power;
    r.config()["N"] = o->N;
    r.config()["tolerance"] = o->tolerance;
    const int N = o->N, k = o->model == "shift" ? o->power : 0;
    if (2 * k > 2 * N) throw DomainError("--power must not exceed N");
    std::vector<bool> p(2 * N + 1);
    for (int n = 0; n <= N; ++n) p[n + N] = true;
    const auto u = o->model == "shift" ? qcalc::shift_adjoint_model(N, k) : qcalc::identity_model(2 * N + 1, p);
    // A seeded nonnegative weight on the interior, where the lemma applies.
    std::mt19937_64 rng(ctx.seed);
    std::uniform_real_distribution<double> U(0, 1);
    std::vector<double> f(2 * N + 1, 0.0);
    double expected = 0;  // Tr(f S~) with ker U22 = span{e_0, .., e_{k-1}}
    for (int n = -N + k; n <= N - k; ++n) {
      f[n + N] = U(rng);
      if (n >= 0 && n < k) expected += f[n + N];
    }
    qcalc::TriangularReport tri;
    qcalc::MainLemmaResult m;
    {
      PhaseTimer t(r, "check");
      tri = qcalc::triangular_unitary_check(u);
      m = qcalc::main_lemma_check(u, f, o->tolerance);
    }
    auto cond = [](const qcalc::ConditionStatus& c) {
      Json d = Json::array();
      for (long l : c.defects) d.push_back(l);
      return Json{{"holds", c.holds}, {"residual", c.residual}, {"defect_labels", d}};
    };
    r.summary()["u11_isometry"] = cond(tri.u11_isometry);
    r.summary()["u22_coisometry"] = cond(tri.u22_coisometry);
    r.summary()["u12_partial_isometry"] = cond(tri.u12_partial_isometry);
    r.summary()["unitary"] = cond(tri.unitary);
    r.summary()["u21_norm"] = tri.u21_norm;
    r.summary()["ker_u22"] = tri.ker_u22;
    r.add_row("main_lemma",
              Json{{"lhs", m.lhs}, {"rhs", m.rhs}, {"kernel_dim", m.kernel_dim}, {"rhs_expected", expected}},
              std::abs(m.lhs - m.rhs), o->tolerance);
    r.add_check("rhs_nonnegative", m.rhs >= 0);
    r.add_check("rhs_matches_kernel_count", std::abs(m.rhs - expected), o->tolerance);
    r.add_check("defects_outside_interior", tri.exact_on(-N + k, N - k));
    r.add_check("u21_zero", tri.u21_zero);
  });
}

void register_sonin(CLI::App& app, Context& ctx) {
  struct Opts {
    int count = 1;
    int modes = 4;
    int hermite = 120;
    double epsilon = 1e-8;
    double cutoff = 1;
  };
  auto o = std::make_shared<Opts>();
  auto* sub = app.add_subcommand("sonin", "W_inf(g * g^) >= Tr(theta(g) S theta(g)^*) - epsilon on random g");
  sub->add_option("--count", o->count, "Random admissible functions, seeds seed..seed+count-1")
      ->check(CLI::Range(1, 10000));
  sub->add_option("--modes", o->modes, "Trigonometric degree of g")->check(CLI::Range(2, 64));
  sub->add_option("--hermite", o->hermite, "Even Hermite functions in the frame")->check(CLI::Range(4, 2000));
  sub->add_option("--epsilon", o->epsilon, "Spectral cutoff 1 - epsilon, also the margin tolerance")
      ->check(CLI::PositiveNumber);
  sub->add_option("--cutoff", o->cutoff, "Sonin space: f = F f = 0 on [-cutoff, cutoff]")->check(CLI::PositiveNumber);
  ctx.on(sub, [&ctx, o] {
    auto& r = ctx.start("sonin");
    r.config()["count"] = o->count;
    r.config()["modes"] = o->modes;
    r.config()["hermite"] = o->hermite;
    r.config()["epsilon"] = o->epsilon;
    r.config()["cutoff"] = o->cutoff;
    qcalc::SoninOptions opt;
    opt.cutoff = o->cutoff;
    opt.epsilon = o->epsilon;
    opt.hermite_count = o->hermite;
    PhaseTimer t(r, "sonin");
    for (int i = 0; i < o->count; ++i) {
      const std::uint64_t seed = ctx.seed + static_cast<std::uint64_t>(i);
      const auto g = qcalc::random_sonin_test_function(seed, o->modes, ctx.precision);
      const auto s = qcalc::sonin_positivity_check(g, opt);
      r.add_row("positivity",
                Json{{"seed", seed}, {"w_side", s.w_side}, {"trace_side", s.trace_side}, {"margin", s.margin},
                     {"sonin_rank", s.sonin_rank}},
                std::max(0.0, -s.margin), o->epsilon);
    }
  });
}

}  // namespace

void register_qcalc(CLI::App& app, Context& ctx) {
  register_schwarzian(app, ctx);
  register_main_lemma(app, ctx);
  register_sonin(app, ctx);
}

}  // namespace zetalab::cli
