#pragma once

#include <functional>
#include <vector>

#include "zetalab/hp/complex.hpp"

namespace zetalab::weil {

using hp::Complex;
using hp::Precision;
using hp::Real;

// c * t^power * exp(i omega t), with t = log u.
struct ExpTerm {
  Complex coeff;
  int power = 0;
  Real omega;
};

// Closed interval [a, b] in the log variable carrying a sum of ExpTerms.
// Pieces of one function may overlap; their contributions add.
struct Piece {
  Real a;
  Real b;
  std::vector<ExpTerm> terms;
};

// Test function on the multiplicative half-line, supported in
// [lambda^-1, lambda], represented in the log variable t = log u as a
// piecewise exponential polynomial. Functions built from basis coefficients
// also keep those coefficients: c_k over
//   psi_k(u) = (2L)^{-1/2} exp(i pi k log(u) / L),  L = log lambda,  k = -K..K,
// which is orthonormal in L^2([lambda^-1, lambda], d*u).
// At a breakpoint the value is the average of the one-sided limits.
class LogBandFunction {
 public:
  LogBandFunction() = default;
  // coeffs has odd length 2K + 1; entry K + k is the coefficient of psi_k.
  LogBandFunction(const Real& lambda, std::vector<Complex> coeffs);
  static LogBandFunction zero(const Real& lambda);
  static LogBandFunction basis(const Real& lambda, int k);
  // Orthogonal projection of t -> F(t) on span{psi_-K..psi_K}, by composite
  // Gauss-Legendre quadrature with `pieces` panels of `nodes` points.
  static LogBandFunction from_function(const Real& lambda, int K, const std::function<Complex(const Real&)>& F,
                                       int pieces = 32, int nodes = 48);
  // Arbitrary pieces; every piece must lie in [-support_log, support_log].
  static LogBandFunction from_pieces(const Real& lambda, const Real& support_log, std::vector<Piece> pieces);

  const Real& lambda() const { return lambda_; }
  // L = log lambda.
  const Real& log_lambda() const { return log_lambda_; }
  // T with support in [-T, T] (log variable); equals L for basis functions.
  const Real& support_log() const { return support_log_; }
  Precision precision() const { return lambda_.precision(); }

  bool has_coefficients() const { return !coeffs_.empty(); }
  const std::vector<Complex>& coefficients() const { return coeffs_; }
  int half_width() const { return static_cast<int>(coeffs_.size() / 2); }
  const std::vector<Piece>& pieces() const { return pieces_; }
  // Sorted distinct piece endpoints.
  std::vector<Real> breakpoints() const;
  bool is_zero() const { return pieces_.empty(); }

  // F(t) = f(e^t).
  Complex at_log(const Real& t) const;
  // f(u), u > 0.
  Complex operator()(const Real& u) const { return at_log(hp::log(u)); }
  // Mellin transform int f(x) x^{-is} d*x = int F(t) e^{-ist} dt, any complex s.
  Complex mellin(const Complex& s) const;
  // int |F(t)|^2 dt by quadrature on the pieces.
  Real norm_squared() const;

  // Frequency pi k / L of psi_k.
  Real omega(int k) const;

 private:
  Real lambda_;
  Real log_lambda_;
  Real support_log_;
  std::vector<Complex> coeffs_;
  std::vector<Piece> pieces_;
};

// (1 + cos(pi t / L))^power times cos(m pi t / L), or sin(m pi t / L) when
// odd, in psi coordinates: real, C^{2 power - 1}, band limited to |k| <= m +
// power. Uses 2^p (1 + cos x)^p = sum_j C(2p, p + j) e^{ijx}.
LogBandFunction raised_cosine(const Real& lambda, int power, int m, bool odd = false);

inline Complex mellin_hat(const LogBandFunction& f, const Complex& s) { return f.mellin(s); }

// f * g^ with g^(x) = conj(g(1/x)); in the log variable
//   H(t) = int F(t + sigma) conj(G(sigma)) d sigma,
// so that (f * g^)^(s) = f^(s) conj(g^(conj s)). Exact for inputs whose terms
// all have power 0; the result has terms of power <= 1 and support in
// [-(T_f + T_g), T_f + T_g]. Throws DomainError for higher powers.
LogBandFunction star_convolve(const LogBandFunction& f, const LogBandFunction& g);

// int_a^b t^j e^{beta t} dt.
Complex exp_moment(const Complex& beta, int j, const Real& a, const Real& b);

}  // namespace zetalab::weil
