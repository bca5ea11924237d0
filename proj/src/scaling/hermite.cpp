#include "zetalab/scaling/hermite.hpp"

#include <cmath>

#include "zetalab/error.hpp"

namespace zetalab::scaling {

std::vector<Real> hermite_functions(int n, const Real& x) {
  const Precision bits = x.precision();
  hp::PrecisionScope scope(bits);
  std::vector<Real> h(static_cast<std::size_t>(std::max(n, 0)) + 1);
  const Real two_pi = hp::pi(bits) * 2L;
  const Real xi = hp::sqrt(two_pi) * x;
  // (2 pi)^{1/4} pi^{-1/4} = 2^{1/4}.
  h[0] = hp::sqrt(hp::sqrt(Real(2))) * hp::exp(-(xi * xi) / 2L);
  if (n >= 1) h[1] = hp::sqrt(Real(2)) * xi * h[0];
  for (int k = 1; k < n; ++k)
    h[k + 1] = hp::sqrt(Real(2) / Real(k + 1)) * xi * h[k] - hp::sqrt(Real(k) / Real(k + 1)) * h[k - 1];
  return h;
}

EvenGaussHermite::EvenGaussHermite(Real scale, std::vector<Real> coeffs)
    : scale_(std::move(scale)), coeffs_(std::move(coeffs)) {
  if (!(scale_ > Real(0))) throw DomainError("EvenGaussHermite: scale must be positive");
  if (coeffs_.empty()) throw DomainError("EvenGaussHermite: no coefficients");
}

Real EvenGaussHermite::operator()(const Real& x) const {
  hp::PrecisionScope scope(precision());
  const int M = static_cast<int>(coeffs_.size()) - 1;
  const auto h = hermite_functions(2 * M, x.at_precision(precision()) / scale_);
  Real acc = Real::with_bits(precision());
  for (int m = 0; m <= M; ++m) acc += coeffs_[m] * h[2 * m];
  return acc;
}

EvenGaussHermite EvenGaussHermite::fourier() const {
  hp::PrecisionScope scope(precision());
  std::vector<Real> c(coeffs_.size());
  for (std::size_t m = 0; m < c.size(); ++m) c[m] = (m % 2 == 0 ? coeffs_[m] : -coeffs_[m]) * scale_;
  return {Real(1) / scale_, std::move(c)};
}

Real EvenGaussHermite::at_zero() const { return (*this)(Real::with_bits(precision())); }

Real EvenGaussHermite::fourier_at_zero() const { return fourier().at_zero(); }

bool EvenGaussHermite::in_s0(const Real& tol) const {
  return hp::abs(at_zero()) <= tol && hp::abs(fourier_at_zero()) <= tol;
}

EvenGaussHermite EvenGaussHermite::project_s0() const {
  if (coeffs_.size() < 3) throw DomainError("project_s0: need at least three coefficients");
  hp::PrecisionScope scope(precision());
  const std::size_t n = coeffs_.size();
  const auto h = hermite_functions(static_cast<int>(2 * n - 2), Real::with_bits(precision()));
  std::vector<Real> r1(n), r2(n);
  for (std::size_t m = 0; m < n; ++m) {
    r1[m] = h[2 * m];
    r2[m] = (m % 2 == 0 ? h[2 * m] : -h[2 * m]) * scale_;
  }
  auto dot = [&](const std::vector<Real>& u, const std::vector<Real>& v) {
    Real acc = Real::with_bits(precision());
    for (std::size_t m = 0; m < n; ++m) acc += u[m] * v[m];
    return acc;
  };
  const Real g11 = dot(r1, r1), g12 = dot(r1, r2), g22 = dot(r2, r2);
  const Real det = g11 * g22 - g12 * g12;
  if (!(det > hp::epsilon(precision() / 2) * g11 * g22))
    throw DomainError("project_s0: constraints are dependent");
  const Real b1 = dot(r1, coeffs_), b2 = dot(r2, coeffs_);
  const Real y1 = (g22 * b1 - g12 * b2) / det, y2 = (g11 * b2 - g12 * b1) / det;
  std::vector<Real> c = coeffs_;
  for (std::size_t m = 0; m < n; ++m) c[m] -= r1[m] * y1 + r2[m] * y2;
  return {scale_, std::move(c)};
}

Real EvenGaussHermite::decay_radius() const {
  hp::PrecisionScope scope(precision());
  const double n = 2.0 * static_cast<double>(coeffs_.size() - 1);
  const double bits = static_cast<double>(precision()) + 16;
  const double xi = std::sqrt(2 * n + 1) + std::sqrt(2 * bits * std::log(2.0)) + 4;
  return scale_ * Real(xi) / hp::sqrt(hp::pi(precision()) * 2L);
}

Real map_E(const EvenGaussHermite& f, const Real& x) {
  if (!(x > Real(0))) throw DomainError("map_E: x must be positive");
  const Precision bits = f.precision();
  hp::PrecisionScope scope(bits);
  const Real R = f.decay_radius();
  const long N = hp::floor(R / x).to_long();
  Real acc = Real::with_bits(bits);
  for (long n = 1; n <= N; ++n) acc += f(x * n);
  return hp::sqrt(x) * acc;
}

Real map_E(const std::function<Real(const Real&)>& f, const Real& support, const Real& x) {
  if (!(x > Real(0))) throw DomainError("map_E: x must be positive");
  const long N = hp::floor(support / x).to_long();
  Real acc = Real::with_bits(x.precision());
  for (long n = 1; n <= N; ++n) acc += f(x * n);
  return hp::sqrt(x) * acc;
}

namespace {

// Trapezoidal sum of F(t) e^{-i s t} over [t0, t1] with step h; F is
// negligible at both ends.
Complex trapezoid(const std::function<Real(const Real&)>& F, const Real& s, const Real& t0, const Real& t1,
                  const Real& h) {
  const long n = hp::ceil((t1 - t0) / h).to_long();
  Complex acc = Complex::zero(s.precision());
  for (long j = 0; j <= n; ++j) {
    const Real t = t0 + h * j;
    const Real v = F(t);
    if (v.is_zero()) continue;
    acc += Complex::polar(v, -(s * t));
  }
  return acc * h;
}

}  // namespace

Complex mellin_E(const EvenGaussHermite& f, const Real& s) {
  const Precision bits = f.precision();
  hp::PrecisionScope scope(bits);
  // E(f)(x) vanishes to working precision for x > R_f, and for x < 1/R_{Ff}
  // by Poisson summation.
  const Real t1 = hp::log(f.decay_radius());
  const Real t0 = -hp::log(f.fourier().decay_radius());
  const Real h = Real(1) / Real(96);
  return trapezoid([&](const Real& t) { return map_E(f, hp::exp(t)); }, s, t0, t1, h);
}

Complex mellin_half(const EvenGaussHermite& f, const Real& s) {
  const Precision bits = f.precision();
  hp::PrecisionScope scope(bits);
  const Real t1 = hp::log(f.decay_radius());
  // u^{1/2} f(u) ~ u^{5/2} near 0 on S^ev_0, u^{1/2} otherwise.
  const bool s0 = f.in_s0(hp::epsilon(bits / 2));
  const double rate = s0 ? 2.5 : 0.5;
  const Real t0 = -Real((static_cast<double>(bits) + 24) * std::log(2.0) / rate);
  const Real h = Real(1) / Real(96);
  return trapezoid([&](const Real& t) { return hp::exp(t / 2L) * f(hp::exp(t)); }, s, t0, t1, h);
}

Real poincare_sum(const Real& mu, const std::function<Real(const Real&)>& g, const Real& u,
                  const std::optional<Support>& support, int max_terms) {
  if (!(mu > Real(1))) throw DomainError("poincare_sum: mu must exceed 1");
  if (!(u > Real(0))) throw DomainError("poincare_sum: u must be positive");
  const Precision bits = u.precision();
  hp::PrecisionScope scope(bits);
  const Real logmu = hp::log(mu);
  Real acc = Real::with_bits(bits);
  if (support) {
    if (!(support->lo > Real(0)) || support->hi < support->lo)
      throw DomainError("poincare_sum: support must be a positive interval");
    const long k0 = hp::ceil(hp::log(support->lo / u) / logmu).to_long() - 1;
    const long k1 = hp::floor(hp::log(support->hi / u) / logmu).to_long() + 1;
    for (long k = k0; k <= k1; ++k) {
      const Real x = u * hp::pow(mu, k);
      if (x < support->lo || x > support->hi) continue;
      acc += g(x);
    }
    return acc;
  }
  const Real eps = hp::epsilon(bits);
  acc = g(u);
  for (int dir : {1, -1}) {
    Real x = u;
    int quiet = 0;
    int k = 0;
    for (; k < max_terms && quiet < 4; ++k) {
      x = dir > 0 ? x * mu : x / mu;
      const Real term = g(x);
      acc += term;
      quiet = hp::abs(term) <= eps * hp::abs(acc) || term.is_zero() ? quiet + 1 : 0;
    }
    if (quiet < 4) throw DomainError("poincare_sum: terms do not decay");
  }
  return acc;
}

Real zero_count_estimate(const Real& E) {
  const Precision bits = E.precision();
  hp::PrecisionScope scope(bits);
  const Real two_pi = hp::pi(bits) * 2L;
  if (!(E > two_pi)) throw DomainError("zero_count_estimate: E must exceed 2 pi");
  const Real x = E / two_pi;
  return x * hp::log(x) - x;
}

}  // namespace zetalab::scaling
