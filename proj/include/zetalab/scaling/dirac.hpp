#pragma once

#include <vector>

#include "zetalab/hp/real.hpp"

namespace zetalab::scaling {

// A positive eigenvalue of D(lambda, k) paired with a zero ordinate.
struct ZeroMatch {
  std::size_t zero_index = 0;  // 0-based position in the ordinate list
  double ordinate = 0;
  double eigenvalue = 0;
  double abs_error = 0;
  double rel_error = 0;
};

struct SpectralReport {
  double lambda = 0;
  int k = 0;
  int basis_size = 0;  // number of log-Fourier modes, 2M + 1
  // Spectrum of (1 - Pi) D_0 (1 - Pi) on the complement of the range of Pi,
  // ascending; the k zero eigenvalues carried by the range are omitted.
  std::vector<double> eigenvalues;
  std::vector<double> positive;
  // Eigenvalues above this are affected by the mode cutoff and not matched.
  double match_ceiling = 0;
  std::vector<ZeroMatch> matches;  // sorted by zero index
  int leading_within_1pct = 0;     // leading positive eigenvalues paired with relative error < 1%
  int matched_prefix = 0;          // largest j such that the first j ordinates are all paired
  int matched_total = 0;
  double mean_abs_error_20 = 0;  // mean |eigenvalue - ordinate| over the first 20 ordinates (pairs missing count 0.5)
  double max_residual = 0;       // max ||B v - e v|| over eigenpairs of the compressed matrix
  double projection_rank_gap = 0;  // smallest |R_ii| / largest in the QR of the prolate coefficients
};

// How E(f) is evaluated on [lambda^-1, lambda] for f = sum a_i P_lambda psi_i.
//   Direct:      u^{1/2} sum_{n <= lambda / u} f(n u) everywhere (n up to lambda^2).
//   PoissonDual: the direct sum for u >= 1, and u^{-1/2} sum_{n <= lambda u}
//                (F f)(n / u) for u < 1 with F f replaced by its
//                time-limited part sum a_i (-1)^i sqrt(mu_i) P_lambda psi_i,
//                so only n <= lambda occur.
enum class EMode { Direct, PoissonDual };

// Greedy one-to-one pairing: all (eigenvalue, ordinate) pairs closer than
// threshold, taken in order of increasing distance.
std::vector<ZeroMatch> greedy_match(const std::vector<double>& eigenvalues, const std::vector<double>& ordinates,
                                    double threshold = 0.5);

// D_0 = -i d/dt on [-L, L] with periodic conditions is diagonal on
// psi_m = (2L)^{-1/2} e^{i pi m t / L} with eigenvalue pi m / L, L = log lambda.
// Pi(lambda, k) is the orthogonal projection onto the log-Fourier
// coefficients (|m| <= M, M = basis_size / 2) of the prolate vectors of
// prolate_vectors(lambda, k). PSWF coefficients come from pswf_basis at
// pswf_bits; the rest runs in double. Throws DomainError when basis_size <
// 2k + 8 or the projection loses rank.
SpectralReport dirac_spectrum(double lambda, int k, int basis_size, const std::vector<double>& ordinates,
                              hp::Precision pswf_bits = 128, EMode mode = EMode::Direct);

struct SweepResult {
  std::vector<SpectralReport> reports;
  std::size_t best = 0;  // index maximizing (leading_within_1pct, matched_prefix, -mean_abs_error_20)
};

SweepResult dirac_sweep(double lambda, const std::vector<int>& ks, int basis_size,
                        const std::vector<double>& ordinates, hp::Precision pswf_bits = 128,
                        EMode mode = EMode::Direct);

}  // namespace zetalab::scaling
