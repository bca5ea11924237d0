#pragma once

#include <cstddef>
#include <vector>

#include "zetalab/hp/complex.hpp"

namespace zetalab::hp {

// Dense real symmetric or complex Hermitian matrix at a fixed precision.
// Entries are stored row-major; the imaginary part is empty for real input.
// Construction measures the (anti)symmetry defect, rejects inputs whose
// relative defect exceeds 2^{-bits/2}, and then symmetrizes exactly.
class HPMatrix {
 public:
  HPMatrix() = default;
  static HPMatrix real(std::size_t n, std::vector<Real> entries, Precision bits);
  static HPMatrix hermitian(std::size_t n, std::vector<Complex> entries, Precision bits);
  static HPMatrix identity(std::size_t n, Precision bits);

  std::size_t dim() const { return n_; }
  Precision precision() const { return bits_; }
  bool is_complex() const { return !im_.empty(); }
  const Real& re(std::size_t i, std::size_t j) const { return re_[i * n_ + j]; }
  Real im(std::size_t i, std::size_t j) const;
  Complex at(std::size_t i, std::size_t j) const { return {re(i, j), im(i, j)}; }
  // max |A_ij - conj(A_ji)| / max |A_ij| measured before symmetrization.
  const Real& hermitian_defect() const { return defect_; }
  Real trace() const;
  Real frobenius_norm() const;

 private:
  std::size_t n_ = 0;
  Precision bits_ = 0;
  std::vector<Real> re_;
  std::vector<Real> im_;
  Real defect_;
};

struct EigenResult {
  std::vector<Real> values;                 // ascending
  std::vector<std::vector<Complex>> vectors;  // vectors[i] pairs with values[i]; empty if not requested
  std::vector<Real> residuals;              // ||M v - lambda v||_2 with ||v|| = 1
  int sweeps = 0;
  Real off_norm;  // off-diagonal Frobenius norm at termination
};

// Cyclic Jacobi with Rutishauser's rotation formulas. Iterates until the
// off-diagonal norm is below 2^{-(bits - guard_bits)} times the Frobenius
// norm. Complex Hermitian input is diagonalized through the real symmetric
// embedding [[A, -B], [B, A]], whose spectrum is that of A doubled.
// Residuals are always computed (they need the eigenvectors internally).
EigenResult symmetric_eigen(const HPMatrix& m, bool want_vectors = true, int guard_bits = 16,
                            int max_sweeps = 80);

// Eigenvalues only (ascending) of a real symmetric matrix, by Householder
// reduction to tridiagonal form and implicit QL, at bits + guard_bits.
// Absolute error is a small multiple of n 2^{-bits} ||M||. Throws
// DomainError for complex input and ConvergenceError after 60 QL iterations
// on one eigenvalue.
std::vector<Real> symmetric_eigenvalues(const HPMatrix& m, int guard_bits = 16);

// Eigenvalues (ascending) of the symmetric tridiagonal matrix with diagonal d
// and off-diagonal e (e[i] couples i and i + 1), by implicit QL at bits.
std::vector<Real> tridiagonal_eigenvalues(std::vector<Real> d, std::vector<Real> e, Precision bits);

// Unit eigenvector of the same tridiagonal matrix for an eigenvalue computed
// to working accuracy, by inverse iteration with partial pivoting. The sign
// makes the entry of largest magnitude positive.
std::vector<Real> tridiagonal_eigenvector(const std::vector<Real>& d, const std::vector<Real>& e,
                                          const Real& value, Precision bits);

}  // namespace zetalab::hp
