#pragma once

#include <functional>
#include <vector>

#include "zetalab/weil/log_band.hpp"
#include "zetalab/zero_table.hpp"

namespace zetalab::weil {

bool is_prime(unsigned long n);
std::vector<unsigned long> primes_up_to(unsigned long n);

// W_p(f) = log p sum_{m >= 1} p^{-m/2} (f(p^m) + f(p^{-m})). Throws
// DomainError unless p is prime.
Complex w_prime(unsigned long p, const LogBandFunction& f);

enum class ArchRule { TanhSinh, GaussLegendre };

// W_R(f) = (log 4 pi + gamma) f(1)
//        + int_1^inf (f(x) + f(1/x) - 2 x^{-1/2} f(1)) x^{1/2} / (x - 1/x) d*x.
// Integrated in t = log x piecewise between breakpoints; the tail beyond the
// support contributes f(1) log tanh(T/2) exactly. Near t = 0 the integrand is
// evaluated with extra precision to absorb the cancellation.
Complex w_arch(const LogBandFunction& f, ArchRule rule = ArchRule::TanhSinh);

// Same functional for F(t) = f(e^t) given as a callable that vanishes for
// |t| > T. `breaks` lists points of [0, T] where F(t) + F(-t) may fail to be
// smooth; 0 and T are added. F must accept arguments of any precision.
Complex w_arch(const std::function<Complex(const Real&)>& F, const Real& T, std::vector<Real> breaks,
               Precision bits, ArchRule rule = ArchRule::TanhSinh);

struct ExplicitFormulaCheck {
  Complex lhs;  // f^(i/2) + f^(-i/2) - sum over zeros of f^(gamma) + f^(-gamma)
  Complex rhs;  // W_R(f) + sum_p W_p(f)
  Real residual;
  std::size_t zeros_used = 0;
  std::vector<unsigned long> primes;
};

// Both sides of the explicit formula using the first `zero_count` ordinates
// (all if 0); every zero is taken on the critical line with its conjugate.
ExplicitFormulaCheck explicit_formula_residual(const LogBandFunction& f, const ZeroTable& zeros,
                                               std::size_t zero_count = 0, ArchRule rule = ArchRule::TanhSinh);

}  // namespace zetalab::weil
