#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "zetalab/error.hpp"
#include "zetalab/hp/quadrature.hpp"
#include "zetalab/hp/special.hpp"
#include "zetalab/qcalc.hpp"

using namespace zetalab;
using namespace zetalab::qcalc;

namespace {

constexpr Scalar kPi = std::numbers::pi_v<Scalar>;

std::vector<Scalar> grid(Scalar a, Scalar b, int n) {
  std::vector<Scalar> x(n);
  for (int i = 0; i < n; ++i) x[i] = a + (b - a) * i / (n - 1);
  return x;
}

// omega of dbar f off the diagonal, in closed form.
Scalar omega_closed(const SmoothFunction& f, Scalar x, Scalar y) {
  const Scalar d = f.f(x) - f.f(y);
  return f.d1(x) * f.d1(y) / (d * d) - 1 / ((x - y) * (x - y));
}

}  // namespace

TEST_CASE("omega of the Fourier kernel") {
  auto fourier = [](Scalar x, Scalar y) { return std::exp(Cx(0, -2 * kPi * x * y)); };
  std::vector<Scalar> x = grid(-1, 1, 21);
  x[7] += 0.013L;  // nonuniform spacing is allowed
  const auto w = omega(KernelGrid::sample(fourier, x, 0));
  REQUIRE(w.size() == 19 * 18);  // guard 0 still skips i = j
  for (const auto& s : w) CHECK(std::abs(s.value - Cx(0, -2 * kPi)) < 1e-12L);
}

TEST_CASE("omega of a split kernel vanishes") {
  auto split = [](Scalar x, Scalar y) { return Cx(std::exp(x) * (2 + std::sin(y)), std::exp(x) * y * y); };
  for (const auto& s : omega(KernelGrid::sample(split, grid(0, 2, 15), 1))) CHECK(std::abs(s.value) < 1e-12L);
}

TEST_CASE("omega is independent of the half-density gauge") {
  const auto f = exp_function();
  auto k = [&](Scalar x, Scalar y) { return quantized_diff_kernel(f, x, y); };
  auto rho = [](Scalar x) { return 1 + x * x / 4; };
  auto gauged = [&](Scalar x, Scalar y) { return rho(x) * rho(y) * k(x, y); };
  const auto x = grid(-1.5L, 1.5L, 31);
  const auto a = omega(KernelGrid::sample(k, x, 2));
  const auto b = omega(KernelGrid::sample(gauged, x, 2));
  REQUIRE(a.size() == b.size());
  for (std::size_t i = 0; i < a.size(); ++i) CHECK(std::abs(a[i].value - b[i].value) < 1e-8L);
}

TEST_CASE("omega of dbar f matches the closed form off the diagonal") {
  for (const auto& f : {exp_function(), parse_function("cubic"), parse_function("mobius")}) {
    auto k = [&](Scalar x, Scalar y) { return quantized_diff_kernel(f, x, y); };
    // Central differences on spacing 0.01: error about 1e-4 omega''.
    const auto x = grid(-1, 1, 201);
    for (const auto& s : omega(KernelGrid::sample(k, x, 20))) {
      const Scalar ref = omega_closed(f, s.x, s.y);
      CHECK(std::abs(s.value.imag()) < 1e-9L);
      CHECK(std::abs(s.value.real() - ref) < 3e-4L * (1 + std::abs(ref)));
    }
  }
}

TEST_CASE("omega rejects vanishing and sign-changing kernels") {
  auto cross = [](Scalar x, Scalar y) { return Cx(x + y, 0); };
  CHECK_THROWS_AS(omega(KernelGrid::sample(cross, grid(-1, 1, 9), 0)), DomainError);
  CHECK_THROWS_AS(KernelGrid::sample(cross, {0, 1, 1}), DomainError);
}

TEST_CASE("quantized differential kernel") {
  const Cx c(0, 1 / kPi);
  const auto id = polynomial({0, 1});
  const auto sq = polynomial({0, 0, 1});
  for (Scalar x : {-1.5L, 0.0L, 0.7L})
    for (Scalar y : {-0.2L, 0.7L, 3.0L}) {
      CHECK(std::abs(quantized_diff_kernel(id, x, y) - c) < 1e-18L);
      CHECK(std::abs(quantized_diff_kernel(sq, x, y) - c * (x + y)) < 1e-17L);
    }
  // (e^{0.1} - 1) / 0.1 = sum_n 0.1^n / (n + 1)!
  Scalar series = 0, term = 1;
  for (int n = 0; n < 30; ++n) {
    series += term;
    term *= 0.1L / (n + 2);
  }
  CHECK(std::abs(quantized_diff_kernel(exp_function(), 0, 0.1L) - c * series) < 1e-12L);
  // The diagonal is the limit i f'(x) / pi, with no 0 / 0.
  CHECK(std::abs(quantized_diff_kernel(exp_function(), 0.3L, 0.3L) - c * std::exp(0.3L)) < 1e-18L);
  const Scalar d = 1e-9L;
  CHECK(std::abs(quantized_diff_kernel(sin_function(), 1, 1 + d) - c * (std::sin(1 + d) - std::sin(1.0L)) / d) <
        1e-9L);
}

TEST_CASE("Schwarzian values and the diagonal of omega") {
  const auto e = schwarzian(exp_function(), 0.3L);
  CHECK(std::abs(e.value + 0.5L) < 1e-18L);
  CHECK(std::abs(e.omega_diag + 1.0L / 12) < 1e-8L);
  const auto m = schwarzian(parse_function("mobius"), 0.3L);
  CHECK(std::abs(m.value) < 1e-17L);
  // The kernel of a Mobius map splits, so only rounding remains.
  CHECK(std::abs(m.omega_diag) < 1e-7L);
  CHECK_THROWS_AS(schwarzian(parse_function("cubic"), 0, 0), DomainError);
  CHECK_THROWS_AS(schwarzian(sin_function(), kPi / 2), DomainError);
  // Near a critical point f' changes sign inside the stencil.
  CHECK_THROWS_AS(schwarzian(sin_function(), static_cast<double>(kPi / 2)), DomainError);
  CHECK_THROWS_AS(schwarzian(sin_function(), kPi / 2 + 5e-5L), DomainError);
  CHECK_NOTHROW(schwarzian(sin_function(), kPi / 2 + 2e-4L));
}

TEST_CASE("diagonal limit converges at second order") {
  const std::vector<Scalar> points{-1.9L, -1.5L, -1.1L, -0.7L, -0.3L, 0.1L, 0.5L, 0.9L, 1.3L, 1.7L};
  for (const auto& name : {"exp", "cubic", "sin"}) {
    const auto f = parse_function(name);
    for (Scalar x : points) {
      if (std::abs(f.d1(x)) < 0.1L) continue;
      const auto r = schwarzian(f, x, 1e-2L);
      const Scalar e1 = 6 * r.omega_diag - r.value, e2 = 6 * r.omega_half - r.value;
      CHECK(std::abs(e1) < 1e-2L * (1 + std::abs(r.value)));
      if (std::abs(e2) > 1e-9L) CHECK(std::abs(e1 / e2 - 4) < 0.05L);
    }
  }
  for (const auto& name : {"exp", "cubic"})
    for (Scalar x : points) CHECK(std::abs(schwarzian(parse_function(name), x).ratio - 1) < 1e-6L);
  for (Scalar x : points) CHECK(std::abs(schwarzian(parse_function("mobius"), x).omega_diag) < 1e-7L);
}

TEST_CASE("Schwarzian is Mobius invariant and satisfies the cocycle rule") {
  std::mt19937 rng(3);
  std::uniform_real_distribution<double> U(-2, 2);
  const auto f = exp_function();
  for (int i = 0; i < 20; ++i) {
    Scalar a = U(rng), b = U(rng), c = U(rng), d = U(rng);
    if (std::abs(a * d - b * c) < 0.1L) continue;
    const auto g = mobius(a, b, c, d);
    for (Scalar x : {-0.8L, 0.2L, 0.9L}) {
      if (std::abs(c * f.f(x) + d) < 0.2L) continue;
      const auto lhs = schwarzian(compose(g, f), x);
      // S(g o f) = S(g)(f) f'^2 + S(f) with S(g) = 0.
      CHECK(std::abs(lhs.value - schwarzian(f, x).value) < 1e-14L);
    }
  }
  CHECK_THROWS_AS(mobius(1, 2, 2, 4), DomainError);
  CHECK_THROWS_AS(parse_function("tan"), ParseError);
  CHECK_THROWS_AS(parse_function("poly:1,x"), ParseError);
  CHECK(std::abs(parse_function("mobius:2,1,1,3").f(1) - 0.75L) < 1e-18L);
}

TEST_CASE("triangular unitaries") {
  SUBCASE("identity") {
    const std::vector<bool> p{false, true, true, false, true};
    const auto r = triangular_unitary_check(identity_model(5, p));
    CHECK(r.u21_zero);
    CHECK(r.u11_isometry.holds);
    CHECK(r.u22_coisometry.holds);
    CHECK(r.u12_partial_isometry.holds);
    CHECK(r.unitary.holds);
    CHECK(r.ker_u22 == 0);
    CHECK(r.consistent);
  }
  SUBCASE("truncated shift adjoint") {
    const int N = 20;
    for (int k = 1; k <= 3; ++k) {
      const auto u = shift_adjoint_model(N, k);
      const auto r = triangular_unitary_check(u);
      CHECK(r.u21_zero);
      CHECK(r.ker_u22 == static_cast<std::size_t>(k));
      CHECK_FALSE(r.unitary.holds);
      CHECK(r.consistent);
      // Defects sit at the two truncation edges only.
      CHECK(r.exact_on(-N + k, N - k));
      CHECK_FALSE(r.exact_on(-N, N));
      for (long l : r.u11_isometry.defects) CHECK(l < -N + k);
      for (long l : r.u22_coisometry.defects) CHECK(l > N - k);
      CHECK(r.u12_partial_isometry.holds);
    }
  }
  SUBCASE("random unitary") {
    for (std::uint64_t seed : {1u, 2u, 3u}) {
      const auto r = triangular_unitary_check(random_unitary_model(12, seed));
      CHECK(r.unitary.holds);
      CHECK_FALSE(r.u21_zero);
      CHECK(r.u21_norm > 1e-3);
    }
  }
}

TEST_CASE("main lemma in the shift model") {
  const int N = 200;
  CHECK(main_lemma_check(identity_model(4, {false, false, true, true}), {1, 2, 3, 4}).lhs == 0);
  {
    const auto u = shift_adjoint_model(N, 1);
    std::vector<double> f(2 * N + 1, 0.0);
    f[N] = 2.5;  // site 0
    const auto r = main_lemma_check(u, f);
    CHECK(r.lhs == doctest::Approx(2.5).epsilon(1e-14));
    CHECK(r.rhs == doctest::Approx(2.5).epsilon(1e-14));
    CHECK(r.kernel_dim == 1);
  }
  std::mt19937 rng(17);
  std::uniform_real_distribution<double> U(0, 1);
  for (int k = 1; k <= 5; ++k) {
    const auto u = shift_adjoint_model(N, k);
    std::vector<double> f(2 * N + 1, 0.0);
    double expected = 0;
    for (int n = -N + k; n <= N - k; ++n) {
      f[n + N] = U(rng);
      if (n >= 0 && n < k) expected += f[n + N];
    }
    const auto r = main_lemma_check(u, f);
    CHECK(r.kernel_dim == static_cast<std::size_t>(k));
    CHECK(std::abs(r.lhs - r.rhs) < 1e-12);
    CHECK(std::abs(r.rhs - expected) < 1e-12);
    CHECK(r.rhs >= 0);
    f[0] = 1;  // site -N
    CHECK_THROWS_AS(main_lemma_check(u, f), DomainError);
  }
  std::vector<double> neg(2 * N + 1, 0.0);
  neg[N] = -1;
  CHECK_THROWS_AS(main_lemma_check(shift_adjoint_model(N, 1), neg), DomainError);
  CHECK_THROWS_AS(main_lemma_check(random_unitary_model(6, 1), std::vector<double>(6, 1.0)), DomainError);
}

TEST_CASE("Sonin constraints and degenerate inputs") {
  hp::PrecisionScope scope(128);
  const hp::Real lambda = hp::sqrt(hp::Real(2));
  const auto zero = sonin_positivity_check(weil::LogBandFunction::zero(lambda));
  CHECK(zero.w_side == 0);
  CHECK(zero.trace_side == 0);
  CHECK(zero.margin == 0);
  CHECK_THROWS_AS(sonin_positivity_check(weil::LogBandFunction::basis(lambda, 0)), DomainError);
  CHECK_THROWS_AS(sonin_positivity_check(weil::LogBandFunction::basis(hp::Real(2), 1)), DomainError);

  std::vector<hp::Complex> c;
  for (int k = -3; k <= 3; ++k) c.emplace_back(hp::Real(1.0 / (1 + k * k)), hp::Real(0.1 * k));
  const auto p = project_sonin_constraints(weil::LogBandFunction(lambda, c));
  CHECK(hp::abs(p.mellin(hp::Complex(0))) < hp::Real(1e-35));
  CHECK(hp::abs(p.mellin(hp::Complex(hp::Real(0), hp::Real(0.5)))) < hp::Real(1e-35));

  const auto g = random_sonin_test_function(4);
  CHECK(hp::abs(g.mellin(hp::Complex(0))) < hp::Real(1e-35));
  CHECK(hp::abs(g.mellin(hp::Complex(hp::Real(0), hp::Real(0.5)))) < hp::Real(1e-35));
  // C^7: the function and its first derivatives vanish at the ends.
  CHECK(hp::abs(g.at_log(g.log_lambda())) < hp::Real(1e-35));
}

TEST_CASE("scaling Gram matrix against the Mellin side") {
  // ||theta(g)^* h_0||^2 = (1/pi) int |g^(-s)|^2 |M h_0(s)|^2 ds with
  // M h_0(s) = int h_0(x) x^{1/2 + is} d*x = 2^{1/4} gamma(1/2 + is) / 2.
  hp::PrecisionScope scope(128);
  const auto g = random_sonin_test_function(9);
  const auto T = theta_gram(g, 40);
  CHECK((T - T.adjoint()).cwiseAbs().maxCoeff() < 1e-12);
  std::vector<hp::Real> breaks;
  for (int j = -40; j <= 40; ++j) breaks.emplace_back(hp::Real(1.5 * j));
  const hp::Real oracle = hp::integrate_gl_pieces<hp::Real>(
      [&](const hp::Real& s) {
        const hp::Real gs = hp::norm(g.mellin(hp::Complex(-s)));
        const hp::Real gam = hp::norm(hp::gamma_factor(hp::Complex(hp::Real(0.5), s)));
        return gs * gam * hp::sqrt(hp::Real(2)) / 4L;
      },
      breaks, 24) / hp::pi(128);
  CHECK(std::abs(T(0, 0).real() - oracle.to_double()) < 1e-9 * oracle.to_double());
}

TEST_CASE("Sonin positivity on smooth admissible functions") {
  SoninOptions opt;
  opt.hermite_count = 80;
  for (std::uint64_t seed : {1u, 2u, 3u}) {
    const auto r = sonin_positivity_check(random_sonin_test_function(seed), opt);
    MESSAGE("w ", r.w_side, " trace ", r.trace_side, " rank ", r.sonin_rank);
    CHECK(r.sonin_rank > 0);
    CHECK(r.trace_side >= 0);
    CHECK(r.margin >= -opt.epsilon);
  }
  // A larger frame sees more of Sonin's space: trace_side cannot decrease much.
  const auto g = random_sonin_test_function(1);
  const auto small = sonin_positivity_check(g, opt);
  opt.hermite_count = 120;
  const auto large = sonin_positivity_check(g, opt);
  CHECK(large.sonin_rank > small.sonin_rank);
  CHECK(large.trace_side >= small.trace_side - 1e-6);
  CHECK(large.w_side == doctest::Approx(small.w_side).epsilon(1e-14));
}
