#include "zetalab/semilocal.hpp"

#include <algorithm>
#include <cmath>

#include "zetalab/error.hpp"
#include "zetalab/hp/quadrature.hpp"
#include "zetalab/hp/special.hpp"
#include "zetalab/weil/explicit.hpp"

namespace zetalab::semilocal {

PlaceSet::PlaceSet(std::vector<unsigned long> primes) : primes_(std::move(primes)) {
  for (unsigned long p : primes_)
    if (!weil::is_prime(p)) throw DomainError("PlaceSet: " + std::to_string(p) + " is not prime");
  std::sort(primes_.begin(), primes_.end());
  primes_.erase(std::unique(primes_.begin(), primes_.end()), primes_.end());
}

PlaceSet PlaceSet::below(const Real& mu) {
  // Largest integer strictly below mu.
  long top = hp::ceil(mu).to_long() - 1;
  if (top < 1) return PlaceSet{};
  return PlaceSet(weil::primes_up_to(static_cast<unsigned long>(top)));
}

bool PlaceSet::contains(unsigned long p) const { return std::binary_search(primes_.begin(), primes_.end(), p); }

Complex gamma_factor(const Complex& z) {
  if (z.im.is_zero() && z.re <= Real(0) && hp::floor(z.re / 2L) * 2L == z.re)
    throw DomainError("gamma_factor: pole at " + z.re.to_string(6));
  return hp::gamma_factor(z);
}

Complex u_arch(const Real& s) {
  hp::PrecisionScope scope(s.precision());
  const Real half(0.5);
  return semilocal::gamma_factor(Complex(half, s)) / semilocal::gamma_factor(Complex(half, -s));
}

Complex u_zeta_ratio(const Real& s) {
  hp::PrecisionScope scope(s.precision());
  const Real half(0.5);
  return hp::zeta(Complex(half, -s)) / hp::zeta(Complex(half, s));
}

Complex rho_p(unsigned long p, const Real& s) {
  if (!weil::is_prime(p)) throw DomainError("rho_p: " + std::to_string(p) + " is not prime");
  hp::PrecisionScope scope(s.precision());
  const Real logp = hp::log(Real(p));
  // p^{-1/2 + is} = p^{-1/2} e^{i s log p}.
  const Complex a = Complex::polar(Real(1) / hp::sqrt(Real(p)), s * logp);
  const Complex one(Real(1), Real::with_bits(s.precision()));
  return (one - a) / (one - hp::conj(a));
}

Complex u_semilocal(const Real& s, const PlaceSet& places) {
  Complex u = u_arch(s);
  for (unsigned long p : places.primes()) u *= rho_p(p, s);
  return u;
}

Real rho_p_phase_derivative(unsigned long p, const Real& s) {
  if (!weil::is_prime(p)) throw DomainError("rho_p_phase_derivative: " + std::to_string(p) + " is not prime");
  const Precision bits = s.precision();
  hp::PrecisionScope scope(bits);
  const Real logp = hp::log(Real(p));
  const Complex a = Complex::polar(Real(1) / hp::sqrt(Real(p)), s * logp);
  // sum_m a^m = a / (1 - a).
  const Complex sum = a / (Complex(Real(1), Real::with_bits(bits)) - a);
  return -(logp * sum.re * 2L);
}

namespace {

// 2 int_0^inf F(x) x^{sigma} e^{i s log x} d*x by the trapezoidal rule in
// t = log x, with F evaluated at e^t.
Complex half_line(const std::function<Real(const Real&)>& F, const Real& sigma, const Real& s, const Real& t0,
                  const Real& t1) {
  const Precision bits = s.precision();
  const Real h = Real(1) / Real(96);
  const long n = hp::ceil((t1 - t0) / h).to_long();
  Complex acc = Complex::zero(bits);
  for (long j = 0; j <= n; ++j) {
    const Real t = t0 + h * j;
    const Real v = F(hp::exp(t));
    if (v.is_zero()) continue;
    acc += Complex::polar(v * hp::exp(sigma * t), s * t);
  }
  return acc * h * 2L;
}

}  // namespace

Check tate_arch_check(const scaling::EvenGaussHermite& f, const Real& s) {
  const Precision bits = f.precision();
  hp::PrecisionScope scope(bits);
  const Real ss = s.at_precision(bits);
  const auto Ff = f.fourier();
  // Integrands decay like x^{1/2} at 0 (or faster) and like a Gaussian at
  // infinity; the lower cut makes the neglected mass below 2^{-bits - 24}.
  const Real lower = -Real((static_cast<double>(bits) + 24) * std::log(2.0) * 2);
  const Real half(0.5);
  Check out;
  out.lhs = half_line([&](const Real& x) { return Ff(x); }, half, ss, lower, hp::log(Ff.decay_radius()));
  out.rhs = u_arch(ss) * half_line([&](const Real& x) { return f(x); }, half, -ss, lower, hp::log(f.decay_radius()));
  out.residual = hp::abs(out.lhs - out.rhs);
  return out;
}

LiftCheck semilocal_lift_check(const std::function<Real(const Real&)>& f, const Real& mu, const Real& u,
                               bool allow_below) {
  if (!(mu > Real(1))) throw DomainError("semilocal_lift_check: mu must exceed 1");
  const Precision bits = u.precision();
  hp::PrecisionScope scope(bits);
  const Real lambda = hp::sqrt(mu);
  if (!(u > Real(1) / lambda) && !allow_below)
    throw DomainError("semilocal_lift_check: u must exceed lambda^-1");
  const PlaceSet S = PlaceSet::below(mu);
  const long top = hp::floor(mu).to_long();
  LiftCheck out;
  out.lhs = Real::with_bits(bits);
  for (long g = -top; g <= top; ++g) {
    if (g == 0) continue;
    // g is an S-unit when every prime factor lies in S.
    unsigned long r = static_cast<unsigned long>(std::labs(g));
    for (unsigned long p : S.primes())
      while (r % p == 0) r /= p;
    if (r != 1) continue;
    const Real x = u * g;
    if (hp::abs(x) <= lambda) out.orbit.push_back(g);
    out.lhs += f(x);
  }
  out.lhs *= hp::sqrt(u);
  out.rhs = scaling::map_E(f, lambda, u) * 2L;
  out.residual = hp::abs(out.lhs - out.rhs);
  return out;
}

Real theta_prime(const Real& s) {
  hp::PrecisionScope scope(s.precision());
  return hp::digamma(Complex(Real(0.25), s / 2L)).re - hp::log(hp::pi(s.precision()));
}

Real arch_trace_integral(const weil::LogBandFunction& f, const Real& cutoff, int nodes, const Real& panel) {
  const Precision bits = f.precision();
  hp::PrecisionScope scope(bits);
  if (f.is_zero()) return Real::with_bits(bits);
  const long panels = hp::ceil(cutoff / panel).to_long();
  std::vector<Real> breaks;
  for (long j = 0; j <= panels; ++j) breaks.push_back(cutoff * j / panels);
  // f real in t gives f^(-s) = conj f^(s); theta' is even.
  const Real integral = hp::integrate_gl_pieces<Real>(
      [&](const Real& s) { return f.mellin(Complex(s)).re * theta_prime(s); }, breaks, nodes);
  return integral * 2L / (hp::pi(bits) * 4L);
}

Real calibrate_arch_trace(const weil::LogBandFunction& calibration, const Real& cutoff) {
  hp::PrecisionScope scope(calibration.precision());
  const Real raw = arch_trace_integral(calibration, cutoff);
  if (raw.is_zero()) throw DomainError("calibrate_arch_trace: calibration integral vanishes");
  return weil::w_arch(calibration).re / raw;
}

TraceCheck arch_trace_check(const weil::LogBandFunction& f, const Real& kappa, const Real& cutoff, int nodes) {
  hp::PrecisionScope scope(f.precision());
  TraceCheck out;
  out.w_inf = f.is_zero() ? Real::with_bits(f.precision()) : weil::w_arch(f).re;
  out.raw_trace = arch_trace_integral(f, cutoff, nodes);
  out.trace_side = out.raw_trace * kappa;
  out.residual = hp::abs(out.w_inf - out.trace_side);
  return out;
}

}  // namespace zetalab::semilocal
