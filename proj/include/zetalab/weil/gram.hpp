#pragma once

#include <vector>

#include "zetalab/hp/matrix.hpp"
#include "zetalab/weil/explicit.hpp"

namespace zetalab::weil {

// QW(f, g) = sum over zeros of conj(f^(conj s)) g^(s), evaluated through the
// explicit formula applied to h = g * f^:
//   QW(f, g) = h^(i/2) + h^(-i/2) - W_R(h) - sum_{p <= lambda^2} W_p(h).
Complex qw(const LogBandFunction& f, const LogBandFunction& g, ArchRule rule = ArchRule::TanhSinh);

// Matrix of QW restricted to span{psi_-K..psi_K} on [lambda^-1, lambda].
// Entry (j + K, k + K) is QW(psi_j, psi_k); the matrix is real symmetric.
struct WeilGram {
  Real lambda;
  int K = 0;
  Precision bits = 0;
  hp::HPMatrix matrix;
  // a_k = psi_k^(i/2); psi_k^(-i/2) = conj(a_k).
  std::vector<Complex> pole;
  // Difference between two quadrature orders for the archimedean integrals.
  double quadrature_error = 0;
};

// Closed forms in t = log u reduce every entry to the pole values, the prime
// powers p^m <= lambda^2 and two one-dimensional integrals per frequency,
//   S(w) = int_0^{2L} sin(w t) e^{t/2} / (2 sinh t) dt,
//   D(w) = int_0^{2L} ((1 - t/2L) cos(w t) e^{t/2} - 1) / sinh t dt,
// computed by composite Gauss-Legendre at bits + 64.
WeilGram weil_gram(const Real& lambda, int K, Precision bits);

// Entry (j, k) by the general route: star_convolve, Mellin transform at the
// poles, w_arch and w_prime. Used to validate weil_gram.
Complex weil_gram_entry_general(const Real& lambda, int j, int k, Precision bits,
                                ArchRule rule = ArchRule::TanhSinh);

struct GramSpectrum {
  std::vector<Real> values;                // ascending
  std::vector<std::vector<Real>> vectors;  // in psi coordinates, unit norm; empty if not requested
  std::vector<Real> residuals;             // ||G v - mu v|| in the restricted space; with vectors only
  std::size_t dim = 0;
  int sweeps = 0;
};

// Spectrum of G on all of span{psi_k}.
GramSpectrum full_spectrum(const WeilGram& g, bool want_vectors = false);

// Spectrum of G on the subspace where g^(i/2) = g^(-i/2) = 0, that is the
// orthogonal complement of span{Re a, Im a}; dimension 2K - 1.
GramSpectrum constrained_spectrum(const WeilGram& g, bool want_vectors = false);

// c^* G c for a coefficient vector in psi coordinates.
Complex quadratic_form(const WeilGram& g, const std::vector<Complex>& c);

}  // namespace zetalab::weil
