#include <cmath>
#include <memory>
#include <random>

#include "context.hpp"
#include "zetalab/error.hpp"
#include "zetalab/semilocal.hpp"

namespace zetalab::cli {

namespace {

using hp::Complex;
using hp::Real;

void register_semilocal_check(CLI::App& app, Context& ctx) {
  struct Opts {
    std::string s_grid = "-10:10:0.5";
    std::string places = "2,3,5";
    double ratio_tolerance = 1e-25;
    double unit_tolerance = 1e-30;
  };
  auto o = std::make_shared<Opts>();
  auto* sub = app.add_subcommand("semilocal-check", "Unitary u(s): gamma ratio against zeta ratio, modulus, phase");
  sub->add_option("--s-grid", o->s_grid, "Real s: a:b:step or a comma list");
  sub->add_option("--places", o->places, "Finite places, comma separated primes");
  sub->add_option("--ratio-tolerance", o->ratio_tolerance, "|u_gamma(s) - u_zeta(s)|");
  sub->add_option("--unit-tolerance", o->unit_tolerance, "||u(s)| - 1|");
  ctx.on(sub, [&ctx, o] {
    auto& r = ctx.start("semilocal-check");
    r.config()["s_grid"] = o->s_grid;
    r.config()["places"] = o->places;
    r.config()["ratio_tolerance"] = o->ratio_tolerance;
    r.config()["unit_tolerance"] = o->unit_tolerance;
    const auto grid = parse_grid(o->s_grid);
    std::vector<unsigned long> primes;
    for (double p : parse_list(o->places)) {
      if (p < 2 || p != std::floor(p)) throw DomainError("--places must list primes");
      primes.push_back(static_cast<unsigned long>(p));
    }
    const semilocal::PlaceSet S(primes);
    const int bits = ctx.precision;
    const int digits = digits_for(bits);
    // Central difference of the phase: truncation O(h^2), rounding O(eps / h).
    const Real h = hp::ldexp(Real(1), -bits / 4);
    const double phase_tol = std::ldexp(1.0, -(3 * bits) / 8);
    PhaseTimer t(r, "grid");
    for (double sd : grid) {
      const Real s(sd);
      const Complex ua = semilocal::u_arch(s);
      const Complex uz = semilocal::u_zeta_ratio(s);
      const Complex us = semilocal::u_semilocal(s, S);
      r.add_row("functional_equation", Json{{"s", sd}, {"u_gamma", ua.to_string(digits)}, {"u_zeta", uz.to_string(digits)}},
                hp::abs(ua - uz).to_double(), o->ratio_tolerance);
      const Real du = hp::max(hp::abs(hp::abs(ua) - Real(1)), hp::abs(hp::abs(us) - Real(1)));
      r.add_row("unimodular", Json{{"s", sd}, {"u_semilocal", us.to_string(digits)}}, du.to_double(), o->unit_tolerance);
      for (unsigned long p : S.primes()) {
        const Real exact = semilocal::rho_p_phase_derivative(p, s);
        const Real fd = hp::arg(semilocal::rho_p(p, s + h) / semilocal::rho_p(p, s - h)) / (h * 2L);
        r.add_row("phase_derivative", Json{{"s", sd}, {"p", p}, {"theta_p_prime", exact.to_string(digits)}},
                  hp::abs(fd - exact).to_double(), phase_tol);
      }
    }
  });
}

void register_tate(CLI::App& app, Context& ctx) {
  struct Opts {
    std::string s_grid = "0:5:1";
    double scale = 1;
    std::string coeffs = "1";
    double tolerance = 1e-20;
  };
  auto o = std::make_shared<Opts>();
  auto* sub = app.add_subcommand("tate-check", "Archimedean local functional equation for f = sum c_m h_2m(x / a)");
  sub->add_option("--s-grid", o->s_grid, "Real s: a:b:step or a comma list");
  sub->add_option("--scale", o->scale, "Dilation a")->check(CLI::PositiveNumber);
  sub->add_option("--coeffs", o->coeffs, "Even Hermite coefficients c_0,c_1,...");
  sub->add_option("--tolerance", o->tolerance, "|lhs - rhs|");
  ctx.on(sub, [&ctx, o] {
    auto& r = ctx.start("tate-check");
    r.config()["s_grid"] = o->s_grid;
    r.config()["scale"] = o->scale;
    r.config()["coeffs"] = o->coeffs;
    r.config()["tolerance"] = o->tolerance;
    std::vector<Real> c;
    for (double v : parse_list(o->coeffs)) c.emplace_back(v);
    const scaling::EvenGaussHermite f(Real(o->scale), c);
    const int digits = digits_for(ctx.precision);
    PhaseTimer t(r, "grid");
    for (double sd : parse_grid(o->s_grid)) {
      const auto k = semilocal::tate_arch_check(f, Real(sd));
      r.add_row("tate", Json{{"s", sd}, {"lhs", k.lhs.to_string(digits)}, {"rhs", k.rhs.to_string(digits)}},
                k.residual.to_double(), o->tolerance);
    }
  });
}

// (lambda^2 - x^2)^3 (1 + a x^2) on [-lambda, lambda], zero outside.
std::function<Real(const Real&)> even_bump(const Real& lambda, const Real& a) {
  return [lambda, a](const Real& x) {
    if (hp::abs(x) >= lambda) return Real::with_bits(x.precision());
    const Real w = lambda * lambda - x * x;
    return w * w * w * (Real(1) + a * x * x);
  };
}

void register_lift(CLI::App& app, Context& ctx) {
  struct Opts {
    std::string mu = "4,9";
    int cases = 20;
    double u = 0;
    bool allow_below = false;
    double tolerance = 1e-25;
  };
  auto o = std::make_shared<Opts>();
  auto* sub = app.add_subcommand("lift-check", "u^{1/2} sum over the S-unit orbit of f(g u) = 2 E(f)(u)");
  sub->add_option("--mu", o->mu, "Comma list of mu; lambda = mu^{1/2}, S = primes below mu");
  sub->add_option("--cases", o->cases, "Random (f, u) pairs per mu")->check(CLI::Range(1, 100000));
  sub->add_option("--u", o->u, "Check this point only, with f = (lambda^2 - x^2)^3 (1 + 0.3 x^2)");
  sub->add_flag("--allow-below", o->allow_below, "Permit u <= 1/lambda, where equality is not expected");
  sub->add_option("--tolerance", o->tolerance, "|lhs - rhs| / (1 + |rhs|)");
  ctx.on(sub, [&ctx, o] {
    auto& r = ctx.start("lift-check");
    r.config()["mu"] = o->mu;
    r.config()["cases"] = o->cases;
    if (o->u != 0) r.config()["u"] = o->u;
    r.config()["allow_below"] = o->allow_below;
    r.config()["tolerance"] = o->tolerance;
    std::mt19937_64 rng(ctx.seed);
    std::uniform_real_distribution<double> U(0, 1);
    const int digits = digits_for(ctx.precision);
    PhaseTimer t(r, "lift");
    for (double mu : parse_list(o->mu)) {
      const Real lambda = hp::sqrt(Real(mu));
      const int n = o->u != 0 ? 1 : o->cases;
      for (int i = 0; i < n; ++i) {
        const double a = o->u != 0 ? 0.3 : U(rng) * 2 - 1;
        const Real u = o->u != 0 ? Real(o->u) : (Real(1) + Real(U(rng)) * (lambda * lambda - Real(1))) / lambda;
        const auto k = semilocal::semilocal_lift_check(even_bump(lambda, Real(a)), Real(mu), u, o->allow_below);
        Json orbit = Json::array();
        for (long g : k.orbit) orbit.push_back(g);
        r.add_row("lift",
                  Json{{"mu", mu}, {"a", a}, {"u", u.to_string(20)}, {"lhs", k.lhs.to_string(digits)},
                       {"rhs", k.rhs.to_string(digits)}, {"orbit", orbit}},
                  (k.residual / (Real(1) + hp::abs(k.rhs))).to_double(), o->tolerance);
      }
    }
  });
}

}  // namespace

void register_semilocal(CLI::App& app, Context& ctx) {
  register_semilocal_check(app, ctx);
  register_tate(app, ctx);
  register_lift(app, ctx);
}

}  // namespace zetalab::cli
