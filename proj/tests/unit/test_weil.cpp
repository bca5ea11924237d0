#include <doctest.h>

#include "zetalab/error.hpp"
#include "zetalab/hp/quadrature.hpp"
#include "zetalab/hp/special.hpp"
#include "zetalab/weil/gram.hpp"

using namespace zetalab;
using namespace zetalab::weil;
using hp::Complex;
using hp::Real;

namespace {

constexpr hp::Precision kBits = 256;

Real lam(long lambda2) { return hp::sqrt(Real(lambda2)); }

// psi_k written out independently of LogBandFunction.
Complex psi(int k, const Real& L, const Real& t) {
  if (hp::abs(t) > L) return Complex::zero(t.precision());
  return Complex::polar(hp::pi(t.precision()) * static_cast<long>(k) * t / L) / hp::sqrt(L * 2L);
}

// (1 + cos(pi t / L))^2 cos(m pi t / L) on [-L, L] in psi coordinates.
LogBandFunction bump(const Real& lambda, int m) {
  const Real L = hp::log(lambda);
  const Real s = hp::sqrt(L * 2L);
  const int K = m + 2;
  std::vector<Complex> c(2 * K + 1, Complex::zero(kBits));
  const double base[5] = {0.25, 1.0, 1.5, 1.0, 0.25};  // k = -2..2
  for (int sign : {-1, 1}) {
    if (m == 0 && sign == 1) break;
    const double scale = m == 0 ? 1.0 : 0.5;
    for (int k = -2; k <= 2; ++k) c[K + k + sign * m] += Complex(s * Real(base[k + 2] * scale));
  }
  return LogBandFunction(lambda, std::move(c));
}

ZeroTable table() { return load_zero_table(std::string(ZETALAB_TEST_DATA) + "/zeta_zeros_10000.txt"); }

}  // namespace

TEST_CASE("Mellin transform of basis functions") {
  hp::PrecisionScope scope(kBits);
  const Real lambda = lam(7);
  const Real L = hp::log(lambda);
  const auto f0 = LogBandFunction::basis(lambda, 0);
  CHECK(hp::abs(f0.mellin(Complex(0)) - Complex(hp::sqrt(L * 2L))) < hp::epsilon(kBits - 8));
  // Against tanh-sinh quadrature of psi_k(t) e^{-ist}.
  for (int k : {-3, 0, 2, 5})
    for (const Complex s : {Complex(Real(0.7)), Complex(Real(14.1347)), Complex(Real(-3), Real(0.5)),
                            Complex(Real(0), Real(-0.5))}) {
      const auto f = LogBandFunction::basis(lambda, k);
      const Complex direct = hp::integrate_tanh_sinh<Complex>(
          [&](const Real& t) { return psi(k, L, t) * hp::exp(Complex(s.im * t, -(s.re * t))); }, -L, L,
          hp::epsilon(140));
      CHECK(hp::abs(f.mellin(s) - direct) < Real(1e-30));
    }
  // Real coefficients symmetric in k give f(u) = f(1/u) real, hence real f^ on the line.
  const auto b = bump(lambda, 3);
  for (double s : {0.0, 1.5, 20.25}) CHECK(hp::abs(b.mellin(Complex(Real(s))).im) < hp::epsilon(kBits - 16));
  // Values: closed form at interior points, midpoint at the jump, zero outside.
  const auto f3 = LogBandFunction::basis(lambda, 3);
  CHECK(hp::abs(f3.at_log(Real(0.3)) - psi(3, L, Real(0.3))) < hp::epsilon(kBits - 8));
  CHECK(hp::abs(f3.at_log(L) - psi(3, L, L) / 2L) < hp::epsilon(kBits - 8));
  CHECK(f3.at_log(L + Real(0.01)).is_zero());
}

TEST_CASE("exp_moment small and large beta agree with quadrature") {
  hp::PrecisionScope scope(kBits);
  for (int j : {0, 1, 2})
    for (const Complex beta : {Complex(Real(1e-9), Real(2e-9)), Complex(Real(0.3), Real(-0.2)),
                               Complex(Real(0.5), Real(40))}) {
      const Real a(-1.25), b(0.75);
      const Complex direct = hp::integrate_tanh_sinh<Complex>(
          [&](const Real& t) { return hp::exp(beta * Complex(t)) * hp::pow(t, static_cast<long>(j)); }, a, b,
          hp::epsilon(160));
      CHECK(hp::abs(exp_moment(beta, j, a, b) - direct) < Real(1e-40));
    }
}

TEST_CASE("w_prime") {
  hp::PrecisionScope scope(kBits);
  const Real lambda(3);
  const Real L = hp::log(lambda);
  const LogBandFunction one(lambda, {Complex(hp::sqrt(L * 2L))});  // f = 1 on [1/3, 3]
  const Real expected = hp::sqrt(Real(2)) * hp::log(Real(2));
  CHECK(hp::abs(w_prime(2, one) - Complex(expected)) < hp::epsilon(kBits - 8));
  CHECK(expected.to_double() == doctest::Approx(0.98025).epsilon(1e-5));
  // p = 3 sits on the jump: both values are halved by the midpoint rule.
  CHECK(hp::abs(w_prime(3, one) - Complex(hp::log(Real(3)) / hp::sqrt(Real(3)))) < hp::epsilon(kBits - 8));
  CHECK(w_prime(5, one).is_zero());
  CHECK(w_prime(3, bump(Real(2), 1)).is_zero());
  CHECK_THROWS_AS(w_prime(9, one), DomainError);
  CHECK_THROWS_AS(w_prime(1, one), DomainError);
}

TEST_CASE("w_arch: Gauss-Legendre and tanh-sinh agree; frequency-side oracle") {
  hp::PrecisionScope scope(kBits);
  CHECK(w_arch(LogBandFunction::zero(Real(2))).is_zero());
  auto gauss = [](const Real& t) { return Complex(hp::exp(-(t * t))); };
  const Real T(16);
  const Complex ts = w_arch(gauss, T, {}, kBits, ArchRule::TanhSinh);
  const Complex gl = w_arch(gauss, T, {}, kBits, ArchRule::GaussLegendre);
  CHECK(hp::abs(ts - gl) < Real(1e-45));
  CHECK(hp::abs(ts.im) < Real(1e-60));
  // W_R(f) = -(1/2pi) int f^(s) (Re psi(1/4 + is/2) - log pi) ds, f^(s) = sqrt(pi) e^{-s^2/4}.
  const Real logpi = hp::log(hp::pi(kBits));
  auto spectral = [&](const Real& s) {
    const Real theta_prime = hp::digamma(Complex(Real(0.25), s / 2L)).re - logpi;
    return hp::sqrt(hp::pi(kBits)) * hp::exp(-(s * s) / 4L) * theta_prime;
  };
  std::vector<Real> br;
  for (int i = -40; i <= 40; i += 2) br.emplace_back(i);
  const Real oracle = -hp::integrate_gl_pieces<Real>(spectral, br, 96) / (hp::pi(kBits) * 2L);
  CHECK(hp::abs(ts.re - oracle) < Real(1e-45));
  MESSAGE("W_R(exp(-log^2 x)) = " << ts.re.to_string(50));

  // f(1) = 0: the integral truncates with the support.
  const auto b = bump(Real(2), 0);
  const auto h = LogBandFunction(Real(2), {Complex(1), Complex(0), Complex(-1)});  // psi_-1 - psi_1: odd, f(1) = 0
  CHECK(hp::abs(h.at_log(Real(0))) < hp::epsilon(kBits - 8));
  CHECK(hp::abs(w_arch(h) - w_arch(h, ArchRule::GaussLegendre)) < Real(1e-60));
  CHECK(hp::abs(w_arch(b) - w_arch(b, ArchRule::GaussLegendre)) < Real(1e-60));
}

TEST_CASE("star_convolve") {
  hp::PrecisionScope scope(kBits);
  const Real lambda(2);
  const Real L = hp::log(lambda);
  const LogBandFunction f(lambda, {Complex(Real(0.5), Real(0.25)), Complex(1), Complex(Real(-0.3)), Complex(0),
                                   Complex(Real(0), Real(0.8))});
  const LogBandFunction g(lambda, {Complex(Real(0.2)), Complex(Real(-1), Real(0.5)), Complex(Real(0.7))});
  const auto gg = star_convolve(g, g);
  CHECK(hp::abs(gg.at_log(Real(0)) - Complex(g.norm_squared())) < hp::epsilon(kBits - 16));
  CHECK(hp::abs(gg.support_log() - L * 2L) < hp::epsilon(kBits - 4));
  CHECK(gg.at_log(L * 2L + Real(1e-30)).is_zero());
  CHECK(gg.at_log(-(L * 2L) - Real(1e-30)).is_zero());

  const auto h = star_convolve(f, g);
  // Pointwise against direct quadrature of int F(t + s) conj(G(s)) ds.
  for (double tv : {-1.2, -0.4, 0.0, 0.3, 1.1}) {
    const Real t(tv);
    const Real lo = hp::max(-L, -L - t), hi = hp::min(L, L - t);
    const Complex direct = hp::integrate_tanh_sinh<Complex>(
        [&](const Real& s) { return f.at_log(t + s) * hp::conj(g.at_log(s)); }, lo, hi, hp::epsilon(140));
    CHECK(hp::abs(h.at_log(t) - direct) < Real(1e-30));
  }
  // Mellin factorization against direct quadrature of the transform of h.
  const auto br = h.breakpoints();
  for (const Complex s : {Complex(Real(0.5)), Complex(Real(3.25)), Complex(Real(-7)), Complex(Real(0), Real(0.5)),
                          Complex(Real(1), Real(-0.5))}) {
    const Complex fact = f.mellin(s) * hp::conj(g.mellin(hp::conj(s)));
    CHECK(hp::abs(h.mellin(s) - fact) < Real(1e-60));
    Complex direct = Complex::zero(kBits);
    for (std::size_t i = 0; i + 1 < br.size(); ++i)
      direct += hp::integrate_tanh_sinh<Complex>(
          [&](const Real& t) { return h.at_log(t) * hp::exp(Complex(s.im * t, -(s.re * t))); }, br[i], br[i + 1],
          hp::epsilon(140));
    CHECK(hp::abs(direct - fact) < Real(1e-30));
  }
}

TEST_CASE("explicit formula with a zero table") {
  const ZeroTable zeros = table();
  REQUIRE(zeros.size() >= 10000);
  const double first = std::stod(zeros.ordinates.front());
  CHECK(first > 14);
  CHECK(first < 15);
  hp::PrecisionScope scope(kBits);
  const Real lambda(2);
  {
    const auto z = explicit_formula_residual(LogBandFunction::zero(lambda), zeros, 10);
    CHECK(z.lhs.is_zero());
    CHECK(z.rhs.is_zero());
    CHECK(z.residual.is_zero());
  }
  for (int m = 0; m < 5; ++m) {
    const auto f = bump(lambda, m);
    const auto r10 = explicit_formula_residual(f, zeros, 10);
    const auto r2 = explicit_formula_residual(f, zeros, 100);
    const auto r3 = explicit_formula_residual(f, zeros, 1000);
    const auto r4 = explicit_formula_residual(f, zeros, 10000);
    CHECK(r4.primes == std::vector<unsigned long>{2});
    CHECK(r2.residual < r10.residual);
    CHECK(r3.residual < r2.residual);
    CHECK(r4.residual < r3.residual);
    CHECK(r4.residual < Real(1e-8));
    CHECK(r10.residual > r4.residual * 1000L);
    MESSAGE("bump " << m << ": residual(10^4 zeros) = " << r4.residual.to_string(3)
                    << ", residual(10 zeros) = " << r10.residual.to_string(3));
  }
}

TEST_CASE("zero table parsing") {
  const auto t = parse_zero_table("# comment\n14.134725\n\n21.022039\n", "inline");
  CHECK(t.size() == 2);
  CHECK(t.source == "inline");
  CHECK_THROWS_AS(parse_zero_table("14.1\n21\n18\n"), ValidationError);
  CHECK_THROWS_AS(parse_zero_table("21.02\n25.01\n"), ValidationError);
  CHECK(parse_zero_table("14.134725\n21.022040\n25.010858\n").size() == 3);
  CHECK_THROWS_AS(parse_zero_table("abc\n"), ParseError);
  CHECK_THROWS_AS(parse_zero_table("# only comments\n"), ParseError);
}

TEST_CASE("Gram matrix: closed forms against the general route") {
  for (long l2 : {3L, 5L, 11L}) {
    hp::PrecisionScope scope(kBits);
    const Real lambda = lam(l2);
    const auto g = weil_gram(lambda, 6, kBits);
    for (int j : {-4, 0, 1, 6})
      for (int k : {-6, 0, 1, 3}) {
        const Complex general = weil_gram_entry_general(lambda, j, k, kBits);
        CHECK(hp::abs(general - Complex(g.matrix.re(j + 6, k + 6))) < Real(1e-60));
      }
    const Complex gl = weil_gram_entry_general(lambda, 2, -1, kBits, ArchRule::GaussLegendre);
    CHECK(hp::abs(gl - Complex(g.matrix.re(8, 5))) < Real(1e-60));
  }
}

TEST_CASE("Gram matrix is symmetric and prime truncation is exact") {
  hp::PrecisionScope scope(kBits);
  const auto g = weil_gram(lam(5), 16, kBits);
  CHECK(g.matrix.dim() == 33);
  CHECK(g.matrix.hermitian_defect() < hp::epsilon(kBits / 2));
  CHECK(g.quadrature_error < 1e-70);
  // Primes beyond lambda^2 see nothing of h = psi_k * psi_j^.
  const Real lambda = lam(5);
  const auto h = star_convolve(LogBandFunction::basis(lambda, 3), LogBandFunction::basis(lambda, -2));
  for (unsigned long p : {7UL, 11UL, 13UL, 101UL}) CHECK(w_prime(p, h).is_zero());
}

TEST_CASE("below sqrt 2 the Gram matrix has no prime terms and is positive on the pole-free subspace") {
  hp::PrecisionScope scope(kBits);
  const Real lambda = hp::sqrt(Real(1.9));
  const auto h = star_convolve(LogBandFunction::basis(lambda, 1), LogBandFunction::basis(lambda, 0));
  CHECK(w_prime(2, h).is_zero());
  const auto g = weil_gram(lambda, 12, kBits);
  const Real zero = Real::with_bits(kBits);
  // Pole plus archimedean part only.
  const Complex e = weil_gram_entry_general(lambda, 1, 0, kBits);
  const Complex poles = h.mellin(Complex(zero, Real(0.5))) + h.mellin(Complex(zero, Real(-0.5)));
  CHECK(hp::abs(e - (poles - w_arch(h))) < Real(1e-60));
  for (long l2 : {15L, 20L}) {
    const auto gs = weil_gram(hp::sqrt(Real(l2) / 10L), 12, kBits);
    const auto sp = constrained_spectrum(gs, true);
    CHECK(sp.dim == 23);
    for (std::size_t i = 0; i < sp.values.size(); ++i) CHECK(sp.values[i] >= -sp.residuals[i]);
    for (const auto& r : sp.residuals) CHECK(r < hp::epsilon(kBits - 24));
    // Eigenvectors annihilate the pole functionals.
    for (const auto& v : sp.vectors) {
      Complex at_pole = Complex::zero(kBits);
      for (std::size_t k = 0; k < v.size(); ++k) at_pole += gs.pole[k] * v[k];
      CHECK(hp::abs(at_pole) < hp::epsilon(kBits - 24));
    }
  }
}

TEST_CASE("quadratic form of a random combination matches QW by the general route") {
  hp::PrecisionScope scope(kBits);
  const Real lambda = lam(7);
  const auto g = weil_gram(lambda, 3, kBits);
  std::vector<Complex> c{Complex(Real(0.3), Real(-0.1)), Complex(Real(1)), Complex(Real(-0.5), Real(0.2)),
                         Complex(Real(0.25)), Complex(Real(0), Real(0.7)), Complex(Real(-0.4)), Complex(Real(0.1))};
  const LogBandFunction f(lambda, c);
  const Complex direct = qw(f, f);
  CHECK(hp::abs(direct - quadratic_form(g, c)) < Real(1e-55));
  CHECK(hp::abs(direct.im) < Real(1e-55));
}

TEST_CASE("raised_cosine against direct evaluation") {
  hp::PrecisionScope scope(kBits);
  const Real lambda = hp::sqrt(Real(5));
  const Real L = hp::log(lambda);
  for (int m = 0; m < 4; ++m) {
    const auto a = raised_cosine(lambda, 2, m), b = bump(lambda, m);
    REQUIRE(a.coefficients().size() == b.coefficients().size());
    for (std::size_t i = 0; i < a.coefficients().size(); ++i)
      CHECK(hp::abs(a.coefficients()[i] - b.coefficients()[i]) < hp::epsilon(kBits - 8));
  }
  for (int power : {1, 3, 4})
    for (int m : {0, 2})
      for (bool odd : {false, true}) {
        if (odd && m == 0) continue;
        const auto f = raised_cosine(lambda, power, m, odd);
        for (double x : {-0.95, -0.4, 0.0, 0.3, 0.8}) {
          const Real t = L * Real(x);
          const Real w = hp::pi(kBits) * t / L;
          const Real env = hp::pow(Real(1) + hp::cos(w), static_cast<long>(power));
          const Real expect = env * (odd ? hp::sin(w * static_cast<long>(m)) : hp::cos(w * static_cast<long>(m)));
          const Complex got = f.at_log(t);
          CHECK(hp::abs(got.re - expect) < hp::epsilon(kBits - 12));
          CHECK(hp::abs(got.im) < hp::epsilon(kBits - 12));
        }
        CHECK(f.at_log(L * Real(1.01)).is_zero());
      }
}
