#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "zetalab/hp/complex.hpp"

namespace zetalab::scaling {

using hp::Complex;
using hp::Precision;
using hp::Real;

// Orthonormal Hermite function adapted to F f(y) = int f(x) e^{-2 pi i x y} dx:
//   h_n(x) = (2 pi)^{1/4} phi_n(sqrt(2 pi) x),  F h_n = (-i)^n h_n.
// Returns h_0(x) .. h_n(x) by the three-term recurrence.
std::vector<Real> hermite_functions(int n, const Real& x);

// f(x) = sum_m c_m h_{2m}(x / a). Even, Schwartz, and closed under F:
//   F f = sum_m c_m a (-1)^m h_{2m}(a y).
class EvenGaussHermite {
 public:
  EvenGaussHermite(Real scale, std::vector<Real> coeffs);

  const Real& scale() const { return scale_; }
  const std::vector<Real>& coefficients() const { return coeffs_; }
  Precision precision() const { return scale_.precision(); }

  Real operator()(const Real& x) const;
  EvenGaussHermite fourier() const;

  // The two linear functionals cutting out S^ev_0: f(0) and (F f)(0).
  Real at_zero() const;
  Real fourier_at_zero() const;
  bool in_s0(const Real& tol) const;
  // Orthogonal projection, in coefficient space, onto f(0) = F f(0) = 0.
  // Needs at least three coefficients.
  EvenGaussHermite project_s0() const;

  // |x| beyond which every term is below 2^{-bits} relative to sum |c_m|.
  Real decay_radius() const;

 private:
  Real scale_;
  std::vector<Real> coeffs_;
};

// E(f)(x) = x^{1/2} sum_{n >= 1} f(n x), truncated once n x passes the decay
// radius. Throws DomainError for x <= 0.
Real map_E(const EvenGaussHermite& f, const Real& x);

// Same map for an even function supported in [-support, support]; only
// n <= support / x contribute.
Real map_E(const std::function<Real(const Real&)>& f, const Real& support, const Real& x);

// Mellin transforms on the multiplicative half-line at real s, by the
// trapezoidal rule in t = log u (both integrands are analytic in a strip):
//   mellin_E(f, s)    = int_0^inf E(f)(u) u^{-is} d*u,
//   mellin_half(f, s) = int_0^inf u^{1/2} f(u) u^{-is} d*u.
// Their ratio is zeta(1/2 - is) for f in S^ev_0.
Complex mellin_E(const EvenGaussHermite& f, const Real& s);
Complex mellin_half(const EvenGaussHermite& f, const Real& s);

// (Sigma_mu g)(u) = sum_{k in Z} g(mu^k u). With a support interval the sum
// is finite; otherwise terms must fall below 2^{-bits} relative to the
// running sum in both directions within max_terms, else DomainError.
struct Support {
  Real lo;
  Real hi;
};
Real poincare_sum(const Real& mu, const std::function<Real(const Real&)>& g, const Real& u,
                  const std::optional<Support>& support = std::nullopt, int max_terms = 4000);

// Main term of Riemann's count, E/2pi log(E/2pi) - E/2pi. DomainError for
// E <= 2 pi.
Real zero_count_estimate(const Real& E);

}  // namespace zetalab::scaling
