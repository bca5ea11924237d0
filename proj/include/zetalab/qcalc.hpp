#pragma once

#include <complex>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "zetalab/weil/log_band.hpp"

namespace zetalab::qcalc {

// Kernels and Schwarzians are evaluated in extended precision: the diagonal
// limit divides a log-ratio of size O(h^2) by 4 h^2.
using Scalar = long double;
using Cx = std::complex<Scalar>;

// A real function with its first three derivatives.
struct SmoothFunction {
  std::string name;
  std::function<Scalar(Scalar)> f, d1, d2, d3;
};

SmoothFunction exp_function();
SmoothFunction sin_function();
// sum_k c_k x^k.
SmoothFunction polynomial(std::vector<Scalar> coeffs);
// (a x + b) / (c x + d); DomainError if a d - b c = 0.
SmoothFunction mobius(Scalar a, Scalar b, Scalar c, Scalar d);
// g o f, derivatives by the chain rule.
SmoothFunction compose(const SmoothFunction& g, const SmoothFunction& f);
// "exp", "sin", "cubic" (x^3 + x), "mobius" ((2x + 1) / (x + 3)),
// "mobius:a,b,c,d" or "poly:c0,c1,...". ParseError otherwise.
SmoothFunction parse_function(const std::string& spec);

// Samples k(x_i, x_j) on a strictly increasing grid. omega skips the band
// |i - j| <= guard; diagonal samples come from the kernel's own limit formula.
struct KernelGrid {
  std::vector<Scalar> x;
  std::vector<Cx> values;  // row-major, x.size()^2 entries
  int guard = 1;

  static KernelGrid sample(const std::function<Cx(Scalar, Scalar)>& kernel, std::vector<Scalar> x, int guard = 1);
  const Cx& at(std::size_t i, std::size_t j) const { return values[i * x.size() + j]; }
};

struct OmegaSample {
  std::size_t i = 0, j = 0;
  Scalar x = 0, y = 0;
  Cx value;
};

// d_x d_y log k at interior grid points off the guard band, by the central
// mixed difference of log k. The log is taken of the stencil cross-ratio
//   k(i+1, j+1) k(i-1, j-1) / (k(i+1, j-1) k(i-1, j+1)),
// so the branch of log k never enters. DomainError if k vanishes or the
// cross-ratio leaves the right half-plane (a sign change inside the stencil).
std::vector<OmegaSample> omega(const KernelGrid& grid);

// (i / pi) (f(x) - f(y)) / (x - y), with the Taylor limit
// (i / pi) (f' + f'' d / 2 + f''' d^2 / 6), d = y - x, once |d| is tiny.
Cx quantized_diff_kernel(const SmoothFunction& f, Scalar x, Scalar y);

struct SchwarzianResult {
  Scalar value = 0;       // S(f)(x) = f'''/f' - (3/2)(f''/f')^2
  Scalar omega_diag = 0;  // mixed difference of log k at (x, x), step h
  Scalar omega_half = 0;  // the same at step h / 2
  Scalar ratio = 0;       // 6 omega_diag / S(f); NaN when S(f) = 0
  Scalar step = 0;
};

// DomainError if f'(x) vanishes to working precision or f' changes sign on
// [x - h, x + h]. The off-diagonal samples cancel to relative eps |f| / (|f'| h),
// so rounding limits omega_diag to roughly 1e-8 absolute near h = 1e-4.
SchwarzianResult schwarzian(const SmoothFunction& f, Scalar x, Scalar h = 1e-4L);

// Finite matrix with a projection P given by an index subset. Blocks follow
//   T11 = (1 - P) T (1 - P), T12 = (1 - P) T P, T21 = P T (1 - P), T22 = P T P.
// labels[i] names basis vector i (lattice sites for the shift model).
struct BlockOperator {
  Eigen::MatrixXcd matrix;
  std::vector<bool> in_p;
  std::vector<long> labels;

  BlockOperator(Eigen::MatrixXcd m, std::vector<bool> p, std::vector<long> labels = {});
  std::vector<int> p_indices() const;
  std::vector<int> q_indices() const;
  Eigen::MatrixXcd block(int row_block, int col_block) const;  // 1 = (1 - P), 2 = P
  Eigen::Index size() const { return matrix.rows(); }
};

BlockOperator identity_model(int n, const std::vector<bool>& p);
// k-th power of the adjoint of the bilateral shift, truncated to sites
// -N..N: e_n -> e_{n-k}, dropping the image when n - k < -N. P = {n >= 0}.
BlockOperator shift_adjoint_model(int N, int k);
// Haar-random unitary of size n (QR of a complex Gaussian matrix), with P the
// last n / 2 indices.
BlockOperator random_unitary_model(int n, std::uint64_t seed);

struct ConditionStatus {
  bool holds = false;
  double residual = 0;
  std::vector<long> defects;  // labels of rows or columns carrying the defect
};

struct TriangularReport {
  ConditionStatus u11_isometry;          // U11* U11 = 1 on (1 - P)
  ConditionStatus u22_coisometry;        // U22 U22* = 1 on P
  ConditionStatus u12_partial_isometry;  // from ker U22 onto coker U11
  ConditionStatus unitary;               // U* U = U U* = 1
  bool u21_zero = false;
  double u21_norm = 0;
  std::size_t ker_u22 = 0;
  // For triangular U: the three conditions together agree with unitarity.
  bool consistent = false;
  // Every defect label lies outside [lo, hi].
  bool exact_on(long lo, long hi) const;
};

TriangularReport triangular_unitary_check(const BlockOperator& u, double tol = 1e-10);

struct MainLemmaResult {
  double lhs = 0;  // -(1/2) Tr(f U* dU) = -Tr(f (U* P U - P))
  double rhs = 0;  // Tr(f S~), S the projection on ker U22
  std::size_t kernel_dim = 0;
};

// f is a nonnegative diagonal indexed like u. DomainError if f is negative
// somewhere or nonzero on a defect label of triangular_unitary_check.
MainLemmaResult main_lemma_check(const BlockOperator& u, const std::vector<double>& f, double tol = 1e-10);

struct SoninOptions {
  double cutoff = 1.0;      // Sonin space: f = F f = 0 on [-cutoff, cutoff]
  double epsilon = 1e-8;    // spectral cutoff 1 - epsilon
  int hermite_count = 120;  // even Hermite functions h_0, h_2, ..
};

struct SoninResult {
  double w_side = 0;      // W_inf(g * g^) = -w_arch(g * g^)
  double trace_side = 0;  // Tr(theta(g) S theta(g)^*)
  double margin = 0;
  double epsilon = 0;
  std::size_t sonin_rank = 0;
  weil::LogBandFunction projected;
};

// Removes the components of g along g^(0) and g^(i/2) in coefficient space.
weil::LogBandFunction project_sonin_constraints(const weil::LogBandFunction& g);

// A C^7 function on [2^{-1/2}, 2^{1/2}]: (1 + cos(pi t / L))^4 times a real
// trigonometric polynomial of degree <= modes in t = log u, with Gaussian
// coefficients from seed, then moved inside that span onto g^(0) = g^(i/2) = 0.
// Needs modes >= 2.
weil::LogBandFunction random_sonin_test_function(std::uint64_t seed, int modes = 4, hp::Precision bits = 128);

// T_ab = <theta(g)^* h_2a, theta(g)^* h_2b> for a, b < hermite_count, with
// theta(g) = int g(v) theta(v) d*v and theta(v) f(x) = v^{-1/2} f(x / v).
Eigen::MatrixXcd theta_gram(const weil::LogBandFunction& g, int hermite_count);

// g needs basis coefficients and support in [2^{-1/2}, 2^{1/2}]. S is the
// spectral projection of (1 - P1)(1 - F P1 F^*)(1 - P1) at eigenvalues above
// 1 - epsilon in the even Hermite frame. The frame only sees part of Sonin's
// space, so trace_side grows towards its limit as hermite_count grows.
// DomainError if the constraint projection annihilates g.
SoninResult sonin_positivity_check(const weil::LogBandFunction& g, const SoninOptions& opt = {});

}  // namespace zetalab::qcalc
