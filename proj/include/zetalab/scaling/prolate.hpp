#pragma once

#include <vector>

#include "zetalab/hp/complex.hpp"

namespace zetalab::scaling {

using hp::Complex;
using hp::Precision;
using hp::Real;

// Normalized Legendre functions sqrt(k + 1/2) P_k(X), k = 0..n.
std::vector<Real> legendre_normalized(int n, const Real& X);

// One even prolate spheroidal wave function for the time and band limit
// [-lambda, lambda] under F f(y) = int f(x) e^{-2 pi i x y} dx, that is
// bandwidth parameter c = 2 pi lambda^2 on [-1, 1]. On [-lambda, lambda]
//   psi(x) = lambda^{-1/2} sum_j beta_j Pbar_{2j}(x / lambda),  sum beta_j^2 = 1,
// so the time-limited function P_lambda psi has unit L^2 norm.
struct Pswf {
  int order = 0;  // 0, 2, 4, ...
  Real chi;       // eigenvalue of the commuting differential operator
  Real mu;        // band-limiting eigenvalue, in (0, 1)
  std::vector<Real> beta;
};

struct PswfBasis {
  Real lambda;
  Real c;
  Precision bits = 0;
  std::vector<Pswf> functions;

  // Time-limited value P_lambda psi_i(x); zero for |x| > lambda.
  Real value(std::size_t i, const Real& x) const;
  // All functions at once, sharing one Legendre recurrence.
  std::vector<Real> values(const Real& x) const;
  // int psi_i over [-lambda, lambda], which is F(P_lambda psi_i)(0).
  Real integral(std::size_t i) const;
};

// First `count` even PSWFs from the Legendre (Bouwkamp) tridiagonal form of
// -d/dX (1 - X^2) d/dX + c^2 X^2. The expansion length grows until the last
// coefficient of every requested function is below 2^{-bits}. Throws
// DomainError when a requested mu falls below 2^{-bits/2} or the mu fail to
// decrease strictly, since such modes are not resolved at this precision.
PswfBasis pswf_basis(const Real& lambda, int count, Precision bits);

// Orthonormal basis of the k-dimensional space obtained from the first k + 2
// even PSWFs: project their span onto f(0) = F f(0) = 0, apply E, restrict to
// [lambda^-1, lambda] and orthonormalize in L^2(d*u) by Cholesky.
//   g_j(u) = u^{1/2} sum_{n <= lambda / u} f_j(n u),  f_j = sum_i combos[j][i] P_lambda psi_i.
struct ProlateBundle {
  Real lambda;
  int count = 0;
  Precision bits = 0;
  PswfBasis basis;
  std::vector<std::vector<Real>> combos;
  std::vector<Real> pswf_eigenvalues;
  // max |<g_i, g_j> - delta_ij| after orthonormalization, recomputed.
  Real gram_defect;
  // Smallest Cholesky pivot relative to the largest, before normalization.
  Real conditioning;

  Real value(std::size_t j, const Real& u) const;
  Real at_log(std::size_t j, const Real& t) const { return value(j, hp::exp(t)); }
};

ProlateBundle prolate_vectors(const Real& lambda, int k, Precision bits);

// <psi_m, g_j> for m = -K..K with psi_m(t) = (2L)^{-1/2} e^{i pi m t / L}, so
// that result[j] is the coefficient vector used by weil::quadratic_form.
std::vector<std::vector<Complex>> log_fourier_coefficients(const ProlateBundle& b, int K);

// Quadrature nodes in t = log u on [-L, L] respecting the jumps of E at
// t = log(lambda / n), and the values of E(P_lambda psi_i) there.
struct LogSamples {
  std::vector<Real> t;
  std::vector<Real> w;
  std::vector<std::vector<Real>> values;  // values[i][node]
};
LogSamples sample_E(const PswfBasis& basis, std::size_t count, double max_frequency);

}  // namespace zetalab::scaling
