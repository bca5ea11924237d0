#include "zetalab/weil/explicit.hpp"

#include <algorithm>

#include "zetalab/error.hpp"
#include "zetalab/hp/quadrature.hpp"

namespace zetalab::weil {

bool is_prime(unsigned long n) {
  if (n < 2) return false;
  for (unsigned long d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

std::vector<unsigned long> primes_up_to(unsigned long n) {
  std::vector<unsigned long> out;
  if (n < 2) return out;
  std::vector<bool> composite(n + 1, false);
  for (unsigned long p = 2; p <= n; ++p) {
    if (composite[p]) continue;
    out.push_back(p);
    for (unsigned long q = p * p; q <= n; q += p) composite[q] = true;
  }
  return out;
}

namespace {

// Moves t onto a breakpoint it matches up to rounding, so that the midpoint
// convention applies at p^m = e^T.
Real snap(const Real& t, const std::vector<Real>& breaks, Precision bits) {
  const Real tol = hp::epsilon(bits - 12) * (Real(1) + hp::abs(t));
  for (const auto& b : breaks)
    if (hp::abs(t - b) <= tol) return b;
  return t;
}

}  // namespace

Complex w_prime(unsigned long p, const LogBandFunction& f) {
  if (!is_prime(p)) throw DomainError("w_prime: " + std::to_string(p) + " is not prime");
  const Precision bits = f.precision();
  hp::PrecisionScope scope(bits);
  const Real logp = hp::log(Real(p));
  const Real& T = f.support_log();
  const Real tol = hp::epsilon(bits - 12) * (Real(1) + T);
  const auto breaks = f.breakpoints();
  Complex acc = Complex::zero(bits);
  const Real root_p = hp::sqrt(Real(p));
  Real weight = Real(1) / root_p;
  for (long m = 1;; ++m) {
    const Real t = logp * m;
    if (t > T + tol) break;
    const Real ts = snap(t, breaks, bits);
    acc += (f.at_log(ts) + f.at_log(-ts)) * weight;
    weight /= root_p;
  }
  return acc * logp;
}

Complex w_arch(const std::function<Complex(const Real&)>& F, const Real& T, std::vector<Real> breaks, Precision bits,
               ArchRule rule) {
  if (!(T > Real(0))) throw DomainError("w_arch: support bound must be positive");
  const Precision wp = bits + 16;
  hp::PrecisionScope scope(wp);
  const Precision hi_bits = 2 * wp + 32;
  const Complex F0_hi = F(Real::with_bits(hi_bits));
  const Complex F0 = F0_hi.at_precision(wp);

  auto integrand = [&](const Real& t) -> Complex {
    const long e = t.exponent();
    if (e < -static_cast<long>(wp + 8)) return Complex::zero(wp);
    const Precision p = wp + 16 + static_cast<Precision>(std::max(0L, -e));
    hp::PrecisionScope inner(p);
    const Real tt = t.at_precision(p);
    const Complex num = F(tt) + F(-tt) - F0_hi.at_precision(p) * (hp::exp(-tt / 2L) * 2L);
    const Real w = hp::exp(tt / 2L) / (hp::sinh(tt) * 2L);
    return (num * w).at_precision(wp);
  };

  breaks.push_back(Real::with_bits(wp));
  breaks.push_back(T.at_precision(wp));
  std::erase_if(breaks, [&](const Real& b) { return b < Real(0) || b > T; });
  for (auto& b : breaks) b = b.at_precision(wp);
  std::sort(breaks.begin(), breaks.end());
  breaks.erase(std::unique(breaks.begin(), breaks.end()), breaks.end());

  Complex integral = Complex::zero(wp);
  if (rule == ArchRule::TanhSinh) {
    const Real tol = hp::epsilon(bits - 8) * (Real(1) + hp::abs(F0));
    for (std::size_t i = 0; i + 1 < breaks.size(); ++i)
      integral += hp::integrate_tanh_sinh<Complex>(integrand, breaks[i], breaks[i + 1], tol, 16);
  } else {
    const int n = static_cast<int>(bits / 3 + 24);
    const Real max_len(0.125);
    for (std::size_t i = 0; i + 1 < breaks.size(); ++i) {
      const Real len = breaks[i + 1] - breaks[i];
      const long parts = std::max(1L, hp::floor(len / max_len).to_long() + 1);
      std::vector<Real> sub;
      for (long k = 0; k <= parts; ++k) sub.push_back(breaks[i] + len * k / parts);
      integral += hp::integrate_gl_pieces<Complex>(integrand, sub, n);
    }
  }
  const Real c0 = hp::log(hp::pi(wp) * 4L) + hp::euler_gamma(wp);
  const Real tail = hp::log(hp::tanh(T.at_precision(wp) / 2L));
  return (F0 * (c0 + tail) + integral).at_precision(bits);
}

Complex w_arch(const LogBandFunction& f, ArchRule rule) {
  std::vector<Real> breaks;
  for (const auto& b : f.breakpoints()) breaks.push_back(hp::abs(b));
  return w_arch([&f](const Real& t) { return f.at_log(t); }, f.support_log(), std::move(breaks), f.precision(),
                rule);
}

ExplicitFormulaCheck explicit_formula_residual(const LogBandFunction& f, const ZeroTable& zeros,
                                               std::size_t zero_count, ArchRule rule) {
  const Precision bits = f.precision();
  hp::PrecisionScope scope(bits);
  ExplicitFormulaCheck out;
  const auto gammas = zeros.values(bits, zero_count);
  out.zeros_used = gammas.size();
  const Real zero = Real::with_bits(bits);
  const Real half(0.5);
  out.lhs = f.mellin(Complex(zero, half)) + f.mellin(Complex(zero, -half));
  Complex zsum = Complex::zero(bits);
  for (const auto& g : gammas) zsum += f.mellin(Complex(g)) + f.mellin(Complex(-g));
  out.lhs -= zsum;

  out.rhs = w_arch(f, rule);
  const Real pmax = hp::floor(hp::exp(f.support_log()) + Real(1e-20));
  for (unsigned long p : primes_up_to(static_cast<unsigned long>(pmax.to_long()))) {
    out.primes.push_back(p);
    out.rhs += w_prime(p, f);
  }
  out.residual = hp::abs(out.lhs - out.rhs);
  return out;
}

}  // namespace zetalab::weil
