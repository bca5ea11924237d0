#include <doctest.h>

#include <random>

#include "zetalab/error.hpp"
#include "zetalab/hp/matrix.hpp"
#include "zetalab/hp/quadrature.hpp"
#include "zetalab/hp/special.hpp"

using namespace zetalab;
using namespace zetalab::hp;

namespace {
bool close(const Real& a, const Real& b, const Real& tol) { return abs(a - b) <= tol; }
bool close(const Complex& a, const Complex& b, const Real& tol) { return abs(a - b) <= tol; }
}  // namespace

TEST_CASE("real arithmetic follows the widest operand precision") {
  const Real a = Real(1).at_precision(100);
  const Real b = Real(3).at_precision(300);
  CHECK((a / b).precision() == 300);
  CHECK(Real::parse("0.25", 64) == Real(0.25));
  CHECK_THROWS_AS(Real::parse("1.2x"), ParseError);
  Real moved = Real(5);
  Real target = std::move(moved);
  CHECK(target == Real(5));
  moved = Real(7);
  CHECK(moved == Real(7));
}

TEST_CASE("precision scope restores the previous default") {
  const auto before = default_precision();
  {
    PrecisionScope scope(512);
    CHECK(Real(1).precision() == 512);
  }
  CHECK(default_precision() == before);
}

TEST_CASE("Bernoulli numbers") {
  CHECK(bernoulli(0) == mpq_class(1));
  CHECK(bernoulli(1) == mpq_class(-1, 2));
  CHECK(bernoulli(2) == mpq_class(1, 6));
  CHECK(bernoulli(12) == mpq_class(-691, 2730));
  CHECK(bernoulli(7) == 0);
}

TEST_CASE("complex log-gamma against MPFR on the real axis and known values") {
  PrecisionScope scope(256);
  const Real tol = epsilon(240);
  for (double x : {0.1, 0.5, 1.0, 2.5, 7.25, 40.0}) {
    const Real rx(x);
    CHECK(close(lgamma(Complex(rx)).re, lgamma(rx), tol * (abs(lgamma(rx)) + Real(1))));
  }
  // |Gamma(1/2 + i t)|^2 = pi / cosh(pi t)
  for (double t : {0.5, 3.0, 12.0}) {
    const Complex z(Real(0.5), Real(t));
    const Real lhs = norm(gamma(z));
    const Real rhs = pi() / cosh(pi() * Real(t));
    CHECK(close(lhs / rhs, Real(1), epsilon(230)));
  }
  // Gamma(z+1) = z Gamma(z) on a complex point with negative real part.
  const Complex z(Real(-2.3), Real(0.7));
  CHECK(close(gamma(z + Complex(Real(1))), z * gamma(z), epsilon(230) * abs(gamma(z))));
  CHECK_THROWS_AS(gamma(Complex(Real(-3))), DomainError);
}

TEST_CASE("complex digamma") {
  PrecisionScope scope(256);
  for (double x : {0.3, 1.0, 9.5}) {
    CHECK(close(digamma(Complex(Real(x))).re, digamma(Real(x)), epsilon(230)));
  }
  // Im psi(1/2 + i t) = (pi/2) tanh(pi t)
  const Real t(2.75);
  CHECK(close(digamma(Complex(Real(0.5), t)).im, pi() / 2L * tanh(pi() * t), epsilon(230)));
}

TEST_CASE("zeta by Euler-Maclaurin matches MPFR and the functional equation") {
  PrecisionScope scope(256);
  for (double x : {0.5, 2.0, 3.5, -1.5, 20.0}) {
    const Real rx(x);
    CHECK(close(zeta(Complex(rx)).re, zeta(rx), epsilon(230) * (abs(zeta(rx)) + Real(1))));
  }
  // First zero ordinate to 20 digits.
  const Complex near_zero(Real(0.5), Real::parse("14.134725141734693790457251983562470270784"));
  CHECK(abs(zeta(near_zero)) < Real(1e-38));
  // gamma_R(z) zeta(z) = gamma_R(1-z) zeta(1-z)
  const Complex z(Real(0.5), Real(3));
  const Complex w = Complex(Real(1)) - z;
  CHECK(close(gamma_factor(z) * zeta(z), gamma_factor(w) * zeta(w), Real(1e-60)));
  CHECK(close(gamma_factor(Complex(Real(1))), Complex(Real(1)), epsilon(240)));
  CHECK(close(gamma_factor(Complex(Real(2))), Complex(Real(1) / pi()), epsilon(240)));
}

TEST_CASE("Gauss-Legendre and tanh-sinh agree on smooth and endpoint-singular integrals") {
  PrecisionScope scope(256);
  const Real zero(0), one(1);
  // int_0^1 e^x dx = e - 1
  const Real gl = integrate_gl<Real>([](const Real& x) { return exp(x); }, zero, one, 60);
  CHECK(close(gl, exp(one) - one, epsilon(240)));
  // int_0^1 -log(x) dx = 1 (endpoint singular): tanh-sinh only
  const Real ts = integrate_tanh_sinh<Real>([](const Real& x) { return -log(x); }, zero, one, epsilon(200));
  CHECK(close(ts, one, epsilon(190)));
  // complex integrand: int_0^pi e^{ix} dx = 2i
  const Complex c = integrate_gl<Complex>([](const Real& x) { return Complex::polar(x); }, zero, pi(), 60);
  CHECK(close(c, Complex(Real(0), Real(2)), epsilon(230)));
}

TEST_CASE("Jacobi eigen-decomposition") {
  PrecisionScope scope(256);
  SUBCASE("diagonal") {
    const auto m = HPMatrix::real(3, {Real(3), 0, 0, 0, Real(1), 0, 0, 0, Real(2)}, 256);
    const auto r = symmetric_eigen(m);
    REQUIRE(r.values.size() == 3);
    CHECK(r.values[0] == Real(1));
    CHECK(r.values[1] == Real(2));
    CHECK(r.values[2] == Real(3));
  }
  SUBCASE("swap") {
    const auto m = HPMatrix::real(2, {Real(0), Real(1), Real(1), Real(0)}, 256);
    const auto r = symmetric_eigen(m);
    CHECK(close(r.values[0], Real(-1), epsilon(240)));
    CHECK(close(r.values[1], Real(1), epsilon(240)));
  }
  SUBCASE("random Hermitian 12x12: trace identity and residuals") {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> u(-1, 1);
    const std::size_t n = 12;
    std::vector<Complex> e(n * n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i; j < n; ++j) {
        Complex z(Real(u(rng)) / Real(3), i == j ? Real(0) : Real(u(rng)) / Real(7));
        e[i * n + j] = z;
        e[j * n + i] = conj(z);
      }
    const auto m = HPMatrix::hermitian(n, e, 256);
    const auto r = symmetric_eigen(m);
    REQUIRE(r.values.size() == n);
    Real sum(0);
    for (const auto& v : r.values) sum += v;
    CHECK(close(sum, m.trace(), Real(1e-70)));
    for (const auto& res : r.residuals) CHECK(res < Real(1e-70));
    for (std::size_t i = 1; i < n; ++i) CHECK(r.values[i - 1] <= r.values[i]);
  }
  SUBCASE("non-symmetric input is rejected") {
    CHECK_THROWS_AS(HPMatrix::real(2, {Real(0), Real(1), Real(2), Real(0)}, 256), ValidationError);
  }
}

TEST_CASE("tridiagonal QL eigenvalues agree with Jacobi") {
  PrecisionScope scope(256);
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(-1, 1);
  const std::size_t n = 24;
  // Q diag(mu) Q^T with one eigenvalue far below the rest.
  std::vector<Real> e(n * n, Real::with_bits(256));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j) {
      e[i * n + j] = Real(u(rng));
      e[j * n + i] = e[i * n + j];
    }
  const auto m = HPMatrix::real(n, e, 256);
  const auto jac = symmetric_eigen(m, false);
  const auto ql = symmetric_eigenvalues(m);
  REQUIRE(ql.size() == n);
  for (std::size_t i = 0; i < n; ++i) CHECK(close(ql[i], jac.values[i], Real(1e-70)));
  // Shift so the smallest eigenvalue is about 1e-60 and check it is resolved.
  std::vector<Real> shifted = e;
  const Real shift = jac.values[0] - Real(1e-60);
  for (std::size_t i = 0; i < n; ++i) shifted[i * n + i] -= shift;
  const auto small = symmetric_eigenvalues(HPMatrix::real(n, shifted, 256));
  CHECK(close(small[0], Real(1e-60), Real(1e-70)));
  CHECK(symmetric_eigenvalues(HPMatrix::real(1, {Real(5)}, 256))[0] == Real(5));
  CHECK_THROWS_AS(symmetric_eigenvalues(HPMatrix::hermitian(1, {Complex(1)}, 256)), DomainError);
}
