#pragma once

#include <gmpxx.h>

#include "zetalab/hp/complex.hpp"

namespace zetalab::hp {

// Exact Bernoulli number B_n (B_1 = -1/2). Cached, thread-safe.
mpq_class bernoulli(unsigned n);

// log Gamma(z) for Re z > 0, continued analytically from the positive axis
// (imaginary part is not reduced mod 2 pi). Stirling series after an upward
// shift; relative error below 2^{-(precision - 8)}.
Complex lgamma(const Complex& z);
// Gamma(z) for any non-pole z (reflection for Re z < 1/2).
Complex gamma(const Complex& z);
// Digamma psi(z) for any non-pole z.
Complex digamma(const Complex& z);
// Riemann zeta for s != 1, Euler-Maclaurin summation. Reflection is applied
// for Re s < 0.
Complex zeta(const Complex& s);

// gamma_R(z) = pi^{-z/2} Gamma(z/2), the archimedean local factor.
Complex gamma_factor(const Complex& z);

}  // namespace zetalab::hp
