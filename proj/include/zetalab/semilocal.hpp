#pragma once

#include <functional>
#include <vector>

#include "zetalab/hp/complex.hpp"
#include "zetalab/scaling/hermite.hpp"
#include "zetalab/weil/log_band.hpp"

namespace zetalab::semilocal {

using hp::Complex;
using hp::Precision;
using hp::Real;

// Finite set of places of Q; the archimedean place is always included.
class PlaceSet {
 public:
  PlaceSet() = default;
  // Throws DomainError on a non-prime entry. Duplicates are merged.
  explicit PlaceSet(std::vector<unsigned long> primes);
  // {infinity} and every prime < mu.
  static PlaceSet below(const Real& mu);
  const std::vector<unsigned long>& primes() const { return primes_; }
  bool includes_infinity() const { return true; }
  bool contains(unsigned long p) const;

 private:
  std::vector<unsigned long> primes_;
};

// gamma(z) = pi^{-z/2} Gamma(z/2). DomainError at the poles z = 0, -2, ...
Complex gamma_factor(const Complex& z);

// u(s) = gamma(1/2 + is) / gamma(1/2 - is); unimodular for real s, and equal
// to zeta(1/2 - is) / zeta(1/2 + is) by the functional equation.
Complex u_arch(const Real& s);
// The zeta-ratio form, for comparison. Undefined at ordinates of zeros.
Complex u_zeta_ratio(const Real& s);

// rho_p(s) = (1 - p^{-1/2 + is}) / (1 - p^{-1/2 - is}); rho_p(0) = 1.
Complex rho_p(unsigned long p, const Real& s);
// u_arch(s) times rho_p(s) over the finite places.
Complex u_semilocal(const Real& s, const PlaceSet& places);
// theta_p'(s) for rho_p = e^{i theta_p}: -2 log p Re sum_m p^{-m/2} e^{i m s log p}.
Real rho_p_phase_derivative(unsigned long p, const Real& s);

struct Check {
  Complex lhs;
  Complex rhs;
  Real residual;
};

// Local functional equation at the archimedean place, for the character
// |x|^{is}:
//   lhs = int_{R^x} (F f)(x) |x|^{1/2 + is} d*x,
//   rhs = u(s) int_{R^x} f(x) |x|^{1/2 - is} d*x.
// Both integrals are 2 int_0^inf and are computed by the trapezoidal rule
// in log x.
Check tate_arch_check(const scaling::EvenGaussHermite& f, const Real& s);

struct LiftCheck {
  Real lhs;  // u^{1/2} sum over g in Y = Z cap Gamma cap [-mu, mu] of f(g u)
  Real rhs;  // 2 E(f)(u)
  Real residual;
  std::vector<long> orbit;  // the elements g of Y with f(g u) possibly nonzero
};

// f even with support in [-lambda, lambda], lambda = mu^{1/2}; Gamma is the
// group of S-units +-prod_{p < mu} p^{k_p}. Throws DomainError for u <=
// lambda^{-1} unless allow_below is set (boundary probes).
LiftCheck semilocal_lift_check(const std::function<Real(const Real&)>& f, const Real& mu, const Real& u,
                               bool allow_below = false);

struct TraceCheck {
  Real w_inf;        // w_arch(f)
  Real trace_side;   // kappa (1/4 pi) int f^(s) theta'(s) ds
  Real raw_trace;    // (1/4 pi) int f^(s) theta'(s) ds
  Real residual;
};

// theta'(s) = Re psi(1/4 + is/2) - log pi for u_arch = e^{i theta}.
Real theta_prime(const Real& s);

// Frequency-side integral (1/4 pi) int_R f^(s) theta'(s) ds, truncated at |s|
// = cutoff, by Gauss-Legendre on panels of width panel; f^ must be real.
Real arch_trace_integral(const weil::LogBandFunction& f, const Real& cutoff, int nodes = 24,
                         const Real& panel = Real(0.5));

// kappa = w_arch(f) / arch_trace_integral(f) on a calibration function.
Real calibrate_arch_trace(const weil::LogBandFunction& calibration, const Real& cutoff);

TraceCheck arch_trace_check(const weil::LogBandFunction& f, const Real& kappa, const Real& cutoff, int nodes = 24);

}  // namespace zetalab::semilocal
