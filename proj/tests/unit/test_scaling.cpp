#include <doctest.h>

#include <random>

#include "zetalab/error.hpp"
#include "zetalab/hp/quadrature.hpp"
#include "zetalab/hp/special.hpp"
#include "zetalab/scaling/dirac.hpp"
#include "zetalab/scaling/hermite.hpp"
#include "zetalab/scaling/prolate.hpp"
#include "zetalab/weil/gram.hpp"
#include "zetalab/zero_table.hpp"

using namespace zetalab;
using namespace zetalab::scaling;
using hp::Complex;
using hp::Real;

namespace {

constexpr hp::Precision kBits = 256;

// int_{-R}^{R} f(x) cos(2 pi x y) dx by Gauss-Legendre panels.
Real cosine_transform(const std::function<Real(const Real&)>& f, const Real& R, const Real& y, int panels = 64) {
  std::vector<Real> breaks;
  for (int j = 0; j <= panels; ++j) breaks.push_back(-R + R * 2L * j / panels);
  const Real two_pi = hp::pi(kBits) * 2L;
  return hp::integrate_gl_pieces<Real>([&](const Real& x) { return f(x) * hp::cos(two_pi * x * y); }, breaks, 60);
}

EvenGaussHermite sample_function(unsigned seed, int M, double scale) {
  std::mt19937 rng(seed);
  std::uniform_real_distribution<double> U(-1, 1);
  std::vector<Real> c;
  for (int m = 0; m <= M; ++m) c.push_back(Real(U(rng)));
  return EvenGaussHermite(Real(scale), std::move(c));
}

std::vector<double> ordinates(std::size_t n) {
  const auto t = load_zero_table(std::string(ZETALAB_TEST_DATA) + "/zeta_zeros_10000.txt");
  std::vector<double> out;
  for (std::size_t i = 0; i < n && i < t.ordinates.size(); ++i) out.push_back(std::stod(t.ordinates[i]));
  return out;
}

}  // namespace

TEST_CASE("Hermite functions are orthonormal eigenfunctions of F") {
  hp::PrecisionScope scope(kBits);
  const Real R(9);
  for (int n : {0, 2, 3, 6}) {
    auto hn = [&](const Real& x) { return hermite_functions(n, x)[n]; };
    std::vector<Real> breaks;
    for (int j = 0; j <= 48; ++j) breaks.push_back(-R + R * 2L * j / 48);
    const Real norm = hp::integrate_gl_pieces<Real>([&](const Real& x) { return hn(x) * hn(x); }, breaks, 60);
    CHECK(hp::abs(norm - Real(1)) < Real(1e-50));
    if (n % 2 == 0) {
      // F h_n = (-i)^n h_n, real for even n.
      for (double y : {0.0, 0.4, 1.1}) {
        const Real lhs = cosine_transform(hn, R, Real(y));
        const Real rhs = hn(Real(y)) * Real(n % 4 == 0 ? 1 : -1);
        CHECK(hp::abs(lhs - rhs) < Real(1e-50));
      }
    }
  }
}

TEST_CASE("EvenGaussHermite Fourier transform in closed form") {
  hp::PrecisionScope scope(kBits);
  const auto f = sample_function(7, 5, 0.7);
  const auto Ff = f.fourier();
  CHECK(Ff.scale() == Real(1) / Real(0.7));
  for (double y : {0.0, 0.3, 0.9, 1.7}) {
    const Real direct = cosine_transform([&](const Real& x) { return f(x); }, f.decay_radius(), Real(y));
    CHECK(hp::abs(direct - Ff(Real(y))) < Real(1e-45));
  }
  // F F f = f for even f.
  const auto FFf = Ff.fourier();
  for (double x : {0.2, 1.3}) CHECK(hp::abs(FFf(Real(x)) - f(Real(x))) < Real(1e-60));
}

TEST_CASE("projection onto S^ev_0") {
  hp::PrecisionScope scope(kBits);
  const auto f = sample_function(11, 6, 1.3);
  CHECK_FALSE(f.in_s0(Real(1e-30)));
  const auto g = f.project_s0();
  CHECK(g.in_s0(hp::epsilon(kBits - 16)));
  const auto h = g.project_s0();
  for (std::size_t m = 0; m < g.coefficients().size(); ++m)
    CHECK(hp::abs(h.coefficients()[m] - g.coefficients()[m]) < hp::epsilon(kBits - 16));
  CHECK_THROWS_AS(EvenGaussHermite(Real(1), {Real(1), Real(2)}).project_s0(), DomainError);
}

TEST_CASE("map E and the Poisson identity") {
  hp::PrecisionScope scope(kBits);
  const EvenGaussHermite zero(Real(1), {Real(0), Real(0), Real(0)});
  CHECK(map_E(zero, Real(0.5)).is_zero());
  CHECK_THROWS_AS(map_E(zero, Real(0)), DomainError);

  for (unsigned seed : {1u, 2u, 3u}) {
    const auto f = sample_function(seed, 4 + static_cast<int>(seed), 0.6 + 0.3 * seed).project_s0();
    const auto Ff = f.fourier();
    for (double x : {0.31, 0.7, 1.0, 1.45, 2.9}) {
      const Real lhs = map_E(f, Real(x));
      const Real rhs = map_E(Ff, Real(1) / Real(x));
      CHECK(hp::abs(lhs - rhs) < Real(1e-25));
    }
  }
  // Off S^ev_0 the identity picks up the f(0) and F f(0) terms.
  const auto f = sample_function(5, 4, 1.0);
  const Real x(0.8);
  const Real gap = map_E(f, x) - map_E(f.fourier(), Real(1) / x);
  const Real predicted = (f.fourier_at_zero() / x - f.at_zero()) * hp::sqrt(x) / 2L;
  CHECK(hp::abs(gap - predicted) < Real(1e-25));
  CHECK(hp::abs(gap) > Real(1e-3));
}

TEST_CASE("Mellin transform of E(f) factors through zeta") {
  hp::PrecisionScope scope(kBits);
  const auto f = sample_function(21, 5, 0.9).project_s0();
  for (double s : {0.5, 3.0, 7.5, 17.0}) {
    const Complex lhs = mellin_E(f, Real(s));
    const Complex rhs = hp::zeta(Complex(Real(0.5), Real(-s))) * mellin_half(f, Real(s));
    CHECK(hp::abs(lhs - rhs) < Real(1e-20) * hp::abs(rhs));
  }
}

TEST_CASE("Poincare series") {
  hp::PrecisionScope scope(kBits);
  const Real mu(3);
  // Single term when g lives in one period.
  auto bumpf = [](const Real& u) { return u < Real(1) || u >= Real(3) ? Real(0) : (u - Real(1)) * (Real(3) - u); };
  for (double u : {1.0, 1.7, 2.99})
    CHECK(poincare_sum(mu, bumpf, Real(u), Support{Real(1), Real(3)}) == bumpf(Real(u)));
  auto gauss = [](const Real& u) {
    const Real t = hp::log(u);
    return hp::exp(-(t * t));
  };
  for (double u : {0.3, 1.0, 2.2}) {
    const Real a = poincare_sum(mu, gauss, Real(u));
    const Real b = poincare_sum(mu, gauss, Real(u) * mu);
    CHECK(hp::abs(a - b) < Real(1e-30));
  }
  CHECK_THROWS_AS(poincare_sum(mu, [](const Real&) { return Real(1); }, Real(1)), DomainError);
  CHECK_THROWS_AS(poincare_sum(Real(1), gauss, Real(1)), DomainError);
}

TEST_CASE("zero count main term") {
  hp::PrecisionScope scope(kBits);
  const Real e_point = hp::pi(kBits) * 2L * hp::exp(Real(1));
  CHECK(hp::abs(zero_count_estimate(e_point)) < Real(1e-60));
  CHECK(hp::abs(zero_count_estimate(Real(100)) - Real(28.127)) < Real(1e-3));
  const auto z = ordinates(100);
  CHECK(std::count_if(z.begin(), z.end(), [](double g) { return g < 100; }) == 29);
  Real prev = zero_count_estimate(e_point);
  for (int E = 20; E <= 400; E += 20) {
    const Real v = zero_count_estimate(Real(E));
    CHECK(v > prev);
    prev = v;
  }
  CHECK_THROWS_AS(zero_count_estimate(Real(6)), DomainError);
}

TEST_CASE("prolate spheroidal basis") {
  hp::PrecisionScope scope(kBits);
  SUBCASE("eigenvalues and the band-limiting relation") {
    const Real lambda = hp::sqrt(Real(2));
    const auto B = pswf_basis(lambda, 6, kBits);
    const Real eps = hp::epsilon(kBits);
    for (std::size_t i = 0; i < B.functions.size(); ++i) {
      CHECK(B.functions[i].mu > Real(0));
      CHECK(B.functions[i].mu <= Real(1) + eps);
      if (i > 0) CHECK(B.functions[i].mu <= B.functions[i - 1].mu + eps);
    }
    CHECK(B.functions[5].mu < B.functions[4].mu);
    // |int_{-lambda}^{lambda} psi(y) cos(2 pi x y) dy| = sqrt(mu) |psi(x)|.
    for (std::size_t i : {0u, 3u, 5u}) {
      const Real x(0.37);
      const Real lhs = cosine_transform([&](const Real& y) { return B.value(i, y); }, lambda, x);
      CHECK(hp::abs(hp::abs(lhs) - hp::sqrt(B.functions[i].mu) * hp::abs(B.value(i, x))) < Real(1e-40));
    }
    // Orthonormal in L^2[-lambda, lambda].
    for (std::size_t i = 0; i < 6; ++i)
      for (std::size_t j = 0; j <= i; ++j) {
        const Real g = hp::integrate_gl<Real>([&](const Real& y) { return B.value(i, y) * B.value(j, y); }, -lambda,
                                              lambda, 120);
        CHECK(hp::abs(g - Real(i == j ? 1 : 0)) < Real(1e-30));
      }
  }
  SUBCASE("small bandwidth approaches the constant Legendre function") {
    const auto B = pswf_basis(Real(0.3), 1, kBits);
    CHECK(B.c < Real(0.6));
    CHECK(B.functions[0].beta[0] > Real(0.99));
  }
  SUBCASE("unresolvable modes are rejected") {
    CHECK_THROWS_AS(pswf_basis(Real(0.3), 30, 64), DomainError);
    CHECK_THROWS_AS(pswf_basis(Real(1), 0, 64), DomainError);
  }
}

TEST_CASE("prolate vectors") {
  hp::PrecisionScope scope(kBits);
  SUBCASE("one vector at lambda^2 = 2") {
    const auto b = prolate_vectors(hp::sqrt(Real(2)), 1, kBits);
    REQUIRE(b.combos.size() == 1);
    CHECK(b.gram_defect < Real(1e-60));
  }
  SUBCASE("orthonormal, supported in (0, lambda], built from S^ev_0") {
    const Real lambda = hp::sqrt(Real(5));
    const auto b = prolate_vectors(lambda, 4, kBits);
    CHECK(b.pswf_eigenvalues.size() == 6);
    // Independent quadrature on a different panel layout.
    const Real L = hp::log(lambda);
    std::vector<Real> breaks{-L};
    for (long n = 5; n >= 1; --n) breaks.push_back(hp::log(lambda / Real(n)));
    std::vector<Real> fine;
    for (std::size_t p = 0; p + 1 < breaks.size(); ++p)
      for (int q = 0; q < 6; ++q) fine.push_back(breaks[p] + (breaks[p + 1] - breaks[p]) * q / 6L);
    fine.push_back(L);
    const auto rule = hp::gauss_legendre(80, kBits);
    std::vector<std::vector<Real>> G(4, std::vector<Real>(4, Real(0)));
    for (std::size_t p = 0; p + 1 < fine.size(); ++p) {
      const Real half = (fine[p + 1] - fine[p]) / 2L, mid = (fine[p + 1] + fine[p]) / 2L;
      for (std::size_t q = 0; q < rule->nodes.size(); ++q)
        for (int sgn : {-1, 1}) {
          if (sgn < 0 && rule->nodes[q].is_zero()) continue;
          const Real t = mid + half * rule->nodes[q] * static_cast<long>(sgn);
          std::vector<Real> v;
          for (std::size_t j = 0; j < 4; ++j) v.push_back(b.at_log(j, t));
          for (std::size_t i = 0; i < 4; ++i)
            for (std::size_t j = 0; j < 4; ++j) G[i][j] += v[i] * v[j] * rule->weights[q] * half;
        }
    }
    for (std::size_t i = 0; i < 4; ++i)
      for (std::size_t j = 0; j < 4; ++j) CHECK(hp::abs(G[i][j] - Real(i == j ? 1 : 0)) < Real(1e-40));
    for (std::size_t j = 0; j < 4; ++j) CHECK(b.value(j, lambda * Real(1.01)).is_zero());
    // Each combination annihilates f(0) and F f(0).
    const auto at0 = b.basis.values(Real(0));
    for (const auto& a : b.combos) {
      Real v0(0), v1(0);
      for (std::size_t i = 0; i < a.size(); ++i) {
        v0 += a[i] * at0[i];
        v1 += a[i] * b.basis.integral(i);
      }
      CHECK(hp::abs(v0) < Real(1e-60));
      CHECK(hp::abs(v1) < Real(1e-60));
    }
  }
}

TEST_CASE("QW on prolate vectors at lambda^2 = 11 is minuscule") {
  hp::PrecisionScope scope(kBits);
  const Real lambda = hp::sqrt(Real(11));
  const int K = 32;
  const auto b = prolate_vectors(lambda, 6, kBits);
  const auto coeffs = log_fourier_coefficients(b, K);
  const auto G = weil::weil_gram(lambda, K, kBits);
  const auto spec = weil::full_spectrum(G);
  for (std::size_t j = 0; j < coeffs.size(); ++j) {
    Real norm2(0);
    for (const auto& c : coeffs[j]) norm2 += hp::norm(c);
    const Real q = weil::quadratic_form(G, coeffs[j]).re;
    MESSAGE("prolate vector ", j, ": QW / |g|^2 = ", (q / norm2).to_string(4), ", |P_K g|^2 = ", norm2.to_string(6));
    // Rayleigh quotient within the truncated space is bounded by the spectrum.
    CHECK(q / norm2 >= spec.values.front() * Real(1 - 1e-6));
    CHECK(q / norm2 < Real(1e-6));
  }
}

TEST_CASE("greedy matching") {
  const auto m = greedy_match({14.0, 14.3, 21.0, 30.0}, {14.1347, 21.022, 25.0109}, 0.5);
  REQUIRE(m.size() == 2);
  CHECK(m[0].zero_index == 0);
  CHECK(m[0].eigenvalue == 14.0);
  CHECK(m[1].zero_index == 1);
  CHECK(greedy_match({}, {14.1}).empty());
}

TEST_CASE("Dirac operator D(lambda, k)") {
  const auto z = ordinates(200);
  SUBCASE("k = 0 gives the D_0 grid") {
    const auto r = dirac_spectrum(4.5, 0, 41, z);
    REQUIRE(r.eigenvalues.size() == 41);
    const double step = M_PI / std::log(4.5);
    for (int i = 0; i < 41; ++i) CHECK(r.eigenvalues[i] == doctest::Approx(step * (i - 20)).epsilon(1e-12));
  }
  SUBCASE("preconditions") {
    CHECK_THROWS_AS(dirac_spectrum(4.5, 10, 27, z), DomainError);
    CHECK_THROWS_AS(dirac_spectrum(1.0, 1, 40, z), DomainError);
  }
  SUBCASE("self-adjoint and Weyl count") {
    const int k = 30;
    const auto r = dirac_spectrum(4.5, k, 201, z);
    CHECK(r.eigenvalues.size() == 201 - k);
    CHECK(r.max_residual < 1e-9);
    const double L = std::log(4.5);
    for (double E : {40.0, 80.0}) {
      const auto below = std::count_if(r.eigenvalues.begin(), r.eigenvalues.end(),
                                       [&](double e) { return std::abs(e) <= E; });
      CHECK(std::abs(static_cast<double>(below) - (2 * E * L / M_PI + 1)) <= k + 2);
    }
    // Spectrum symmetric under e -> -e (real prolate vectors).
    for (std::size_t i = 0; i < r.eigenvalues.size(); ++i)
      CHECK(r.eigenvalues[i] == doctest::Approx(-r.eigenvalues[r.eigenvalues.size() - 1 - i]).epsilon(1e-8));
  }
  SUBCASE("zeta cycle: a zero on the D_0 grid stays in the spectrum for every k") {
    // With L = 7 pi / gamma_1 the grid point pi 7 / L is the first zero.
    const double lambda = std::exp(7 * M_PI / z[0]);
    for (int k = 32; k <= 40; k += 2) {
      const auto r = dirac_spectrum(lambda, k, 201, z);
      REQUIRE_FALSE(r.positive.empty());
      CHECK(std::abs(r.positive.front() - z[0]) < 2e-3);
    }
    // At a generic length the lowest eigenvalue moves with k.
    std::vector<double> lows;
    for (int k = 32; k <= 40; k += 2) lows.push_back(dirac_spectrum(4.5, k, 201, z).positive.front());
    CHECK(*std::max_element(lows.begin(), lows.end()) - *std::min_element(lows.begin(), lows.end()) > 0.1);
  }
  SUBCASE("matching quality does not degrade with basis size") {
    double prev = 1e9;
    for (int n : {161, 241, 401}) {
      const auto r = dirac_spectrum(4.5, 34, n, z);
      CHECK(r.mean_abs_error_20 <= prev + 1e-6);
      prev = r.mean_abs_error_20;
    }
  }
}
