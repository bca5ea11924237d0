#include "zetalab/scaling/dirac.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <tuple>

#include <Eigen/Dense>

#include "zetalab/error.hpp"
#include "zetalab/hp/quadrature.hpp"
#include "zetalab/scaling/prolate.hpp"

namespace zetalab::scaling {

namespace {

using cd = std::complex<double>;

// Log-Fourier coefficients (m = -M..M, rows) of E applied to the k functions
// spanning the S^ev_0 part of the first k + 2 even PSWFs (columns).
Eigen::MatrixXcd prolate_coefficients(const PswfBasis& basis, int k, int M, EMode mode) {
  const double lambda = basis.lambda.to_double();
  const double L = std::log(lambda);
  const std::size_t m = basis.functions.size();
  std::size_t terms = 0;
  for (const auto& f : basis.functions) terms = std::max(terms, f.beta.size());
  std::vector<std::vector<double>> beta(m, std::vector<double>(terms, 0.0));
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < basis.functions[i].beta.size(); ++j)
      beta[i][j] = basis.functions[i].beta[j].to_double() * std::sqrt(2.0 * j + 0.5);  // Pbar_2j = sqrt(2j + 1/2) P_2j

  // Null space of f(0) and F f(0) in coefficient space, by Gram-Schmidt.
  std::vector<std::vector<double>> Q, null;
  auto orthogonalize = [&](std::vector<double>& v) {
    for (int pass = 0; pass < 2; ++pass)
      for (const auto& q : Q) {
        double p = 0;
        for (std::size_t i = 0; i < m; ++i) p += q[i] * v[i];
        for (std::size_t i = 0; i < m; ++i) v[i] -= p * q[i];
      }
    double n = 0;
    for (double x : v) n += x * x;
    return std::sqrt(n);
  };
  std::vector<double> r1(m), r2(m);
  const auto at0 = basis.values(hp::Real::with_bits(basis.bits));
  for (std::size_t i = 0; i < m; ++i) {
    r1[i] = at0[i].to_double();
    r2[i] = basis.integral(i).to_double();
  }
  for (auto* r : {&r1, &r2}) {
    const double n = orthogonalize(*r);
    if (!(n > 1e-8)) throw DomainError("dirac_spectrum: S^ev_0 constraints are dependent");
    for (auto& x : *r) x /= n;
    Q.push_back(*r);
  }
  for (std::size_t i = 0; i < m && null.size() < static_cast<std::size_t>(k); ++i) {
    std::vector<double> v(m, 0.0);
    v[i] = 1;
    const double n = orthogonalize(v);
    if (n < 0.25) continue;
    for (auto& x : v) x /= n;
    Q.push_back(v);
    null.push_back(v);
  }
  if (null.size() != static_cast<std::size_t>(k)) throw DomainError("dirac_spectrum: rank deficiency in S^ev_0 projection");

  // Gauss-Legendre nodes on each piece between jumps t = log(lambda / n).
  const int gl = 20;
  const auto rule = hp::gauss_legendre(gl, 64);
  std::vector<double> gx, gw;
  for (std::size_t i = 0; i < rule->nodes.size(); ++i) {
    const double x = rule->nodes[i].to_double(), w = rule->weights[i].to_double();
    gx.push_back(x);
    gw.push_back(w);
    if (x != 0) {
      gx.push_back(-x);
      gw.push_back(w);
    }
  }
  std::vector<double> breaks{-L, L};
  if (mode == EMode::Direct) {
    const long nmax = static_cast<long>(std::floor(lambda * lambda * (1 + 1e-14)));
    for (long n = 2; n <= nmax; ++n) breaks.push_back(std::log(lambda / static_cast<double>(n)));
  } else {
    breaks.push_back(0);
    for (long n = 2; n <= static_cast<long>(std::floor(lambda)); ++n) {
      breaks.push_back(std::log(lambda / static_cast<double>(n)));
      breaks.push_back(-std::log(lambda / static_cast<double>(n)));
    }
  }
  std::sort(breaks.begin(), breaks.end());
  std::erase_if(breaks, [&](double b) { return b < -L || b > L; });
  breaks.erase(std::unique(breaks.begin(), breaks.end(), [](double a, double b) { return std::abs(a - b) < 1e-13; }),
               breaks.end());

  // On u < 1 the dual form uses F(P_lambda psi_i) = alpha_i psi_i with
  // |alpha_i| = sqrt(mu_i) and sign(alpha_i) = sign(beta_i0), since psi_i(0) > 0.
  std::vector<double> dual(m);
  for (std::size_t i = 0; i < m; ++i)
    dual[i] = (basis.functions[i].beta.front().sign() >= 0 ? 1.0 : -1.0) * std::sqrt(basis.functions[i].mu.to_double());
  const double omega1 = std::numbers::pi / L;
  const double rate = basis.c.to_double() + omega1 * M;
  const double norm = 1 / std::sqrt(2 * L);
  const double scale = 1 / std::sqrt(lambda);
  Eigen::MatrixXcd C = Eigen::MatrixXcd::Zero(2 * M + 1, k);
  std::vector<double> P(2 * terms), psi(m), E(k);
  for (std::size_t p = 0; p + 1 < breaks.size(); ++p) {
    const double len = breaks[p + 1] - breaks[p];
    const long panels = std::max(1L, static_cast<long>(std::ceil(len * rate / 8.0)));
    for (long q = 0; q < panels; ++q) {
      const double a = breaks[p] + len * q / panels, half = len / panels / 2, mid = a + half;
      for (std::size_t g = 0; g < gx.size(); ++g) {
        const double t = mid + half * gx[g], w = half * gw[g];
        const bool flip = mode == EMode::PoissonDual && t < 0;
        const double u = std::exp(flip ? -t : t);
        const long N = static_cast<long>(std::floor(lambda / u));
        std::fill(psi.begin(), psi.end(), 0.0);
        for (long n = 1; n <= N; ++n) {
          const double X = n * u / lambda;
          P[0] = 1;
          P[1] = X;
          for (std::size_t d = 1; d + 1 < P.size(); ++d)
            P[d + 1] = ((2.0 * d + 1) * X * P[d] - static_cast<double>(d) * P[d - 1]) / (d + 1.0);
          for (std::size_t i = 0; i < m; ++i) {
            double acc = 0;
            for (std::size_t j = 0; j < terms; ++j) acc += beta[i][j] * P[2 * j];
            psi[i] += flip ? dual[i] * acc : acc;
          }
        }
        const double root = std::exp((flip ? -t : t) / 2) * scale;
        for (int a2 = 0; a2 < k; ++a2) {
          double acc = 0;
          for (std::size_t i = 0; i < m; ++i) acc += null[a2][i] * psi[i];
          E[a2] = acc * root * w * norm;
        }
        const cd step = std::polar(1.0, -omega1 * t);
        cd z = 1;
        for (int mm = 0; mm <= M; ++mm) {
          for (int a2 = 0; a2 < k; ++a2) {
            C(M + mm, a2) += z * E[a2];
            if (mm > 0) C(M - mm, a2) += std::conj(z) * E[a2];
          }
          z *= step;
        }
      }
    }
  }
  return C;
}

}  // namespace

std::vector<ZeroMatch> greedy_match(const std::vector<double>& eigenvalues, const std::vector<double>& ordinates,
                                    double threshold) {
  std::vector<std::tuple<double, std::size_t, std::size_t>> cand;
  for (std::size_t i = 0; i < eigenvalues.size(); ++i)
    for (std::size_t j = 0; j < ordinates.size(); ++j) {
      const double d = std::abs(eigenvalues[i] - ordinates[j]);
      if (d < threshold) cand.emplace_back(d, i, j);
    }
  std::sort(cand.begin(), cand.end());
  std::vector<bool> used_e(eigenvalues.size(), false), used_z(ordinates.size(), false);
  std::vector<ZeroMatch> out;
  for (const auto& [d, i, j] : cand) {
    if (used_e[i] || used_z[j]) continue;
    used_e[i] = used_z[j] = true;
    out.push_back({j, ordinates[j], eigenvalues[i], d, d / std::abs(ordinates[j])});
  }
  std::sort(out.begin(), out.end(), [](const ZeroMatch& a, const ZeroMatch& b) { return a.zero_index < b.zero_index; });
  return out;
}

SpectralReport dirac_spectrum(double lambda, int k, int basis_size, const std::vector<double>& ordinates,
                              hp::Precision pswf_bits, EMode mode) {
  if (!(lambda > 1)) throw DomainError("dirac_spectrum: lambda must exceed 1");
  if (k < 0) throw DomainError("dirac_spectrum: k must be nonnegative");
  if (basis_size < 2 * k + 8) throw DomainError("dirac_spectrum: basis_size must be at least 2k + 8");
  const int M = basis_size / 2;
  const int N = 2 * M + 1;
  const double L = std::log(lambda);
  const double omega1 = std::numbers::pi / L;
  Eigen::VectorXd omega(N);
  for (int i = 0; i < N; ++i) omega(i) = omega1 * (i - M);

  SpectralReport rep;
  rep.lambda = lambda;
  rep.k = k;
  rep.basis_size = N;
  rep.projection_rank_gap = 1;
  if (k == 0) {
    rep.eigenvalues.assign(omega.data(), omega.data() + N);
  } else {
    const auto basis = pswf_basis(hp::Real(lambda), k + 2, pswf_bits);
    const Eigen::MatrixXcd C = prolate_coefficients(basis, k, M, mode);
    Eigen::HouseholderQR<Eigen::MatrixXcd> qr(C);
    const Eigen::MatrixXcd R = qr.matrixQR().topRows(k).triangularView<Eigen::Upper>();
    double rmax = 0, rmin = INFINITY;
    for (int i = 0; i < k; ++i) {
      rmax = std::max(rmax, std::abs(R(i, i)));
      rmin = std::min(rmin, std::abs(R(i, i)));
    }
    rep.projection_rank_gap = rmin / rmax;
    if (!(rep.projection_rank_gap > 1e-10)) throw DomainError("dirac_spectrum: prolate projection loses rank");
    const Eigen::MatrixXcd Qfull = qr.householderQ();
    const Eigen::MatrixXcd Q2 = Qfull.rightCols(N - k);
    const Eigen::MatrixXcd B = Q2.adjoint() * omega.asDiagonal() * Q2;
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(B);
    if (es.info() != Eigen::Success) throw ConvergenceError("dirac_spectrum: eigensolver failed");
    const Eigen::VectorXd ev = es.eigenvalues();
    rep.eigenvalues.assign(ev.data(), ev.data() + ev.size());
    const Eigen::MatrixXcd res = B * es.eigenvectors() - es.eigenvectors() * ev.asDiagonal();
    rep.max_residual = res.colwise().norm().maxCoeff();
  }

  // The cutoff at |m| = M distorts the top of the spectrum; pair only the
  // lower half of the positive range.
  rep.match_ceiling = omega1 * M / 2;
  for (double e : rep.eigenvalues)
    if (e > 1e-9 * omega1) rep.positive.push_back(e);
  std::vector<double> low;
  for (double e : rep.positive)
    if (e <= rep.match_ceiling) low.push_back(e);
  std::vector<double> zs;
  for (double z : ordinates)
    if (z <= rep.match_ceiling) zs.push_back(z);
  rep.matches = greedy_match(low, zs);
  rep.matched_total = static_cast<int>(rep.matches.size());
  for (std::size_t j = 0; j < rep.matches.size() && rep.matches[j].zero_index == j; ++j) rep.matched_prefix = j + 1;
  for (std::size_t i = 0; i < low.size(); ++i) {
    const auto it = std::find_if(rep.matches.begin(), rep.matches.end(),
                                 [&](const ZeroMatch& z) { return z.eigenvalue == low[i]; });
    if (it == rep.matches.end() || !(it->rel_error < 0.01)) break;
    rep.leading_within_1pct = static_cast<int>(i) + 1;
  }
  double err = 0;
  const std::size_t first = std::min<std::size_t>(20, zs.size());
  for (std::size_t j = 0; j < first; ++j) {
    const auto it = std::find_if(rep.matches.begin(), rep.matches.end(),
                                 [&](const ZeroMatch& z) { return z.zero_index == j; });
    err += it == rep.matches.end() ? 0.5 : it->abs_error;
  }
  rep.mean_abs_error_20 = first ? err / first : 0;
  return rep;
}

SweepResult dirac_sweep(double lambda, const std::vector<int>& ks, int basis_size,
                        const std::vector<double>& ordinates, hp::Precision pswf_bits, EMode mode) {
  if (ks.empty()) throw DomainError("dirac_sweep: empty k range");
  SweepResult out;
  for (int k : ks) out.reports.push_back(dirac_spectrum(lambda, k, basis_size, ordinates, pswf_bits, mode));
  auto key = [](const SpectralReport& r) {
    return std::make_tuple(r.leading_within_1pct, r.matched_prefix, -r.mean_abs_error_20);
  };
  for (std::size_t i = 1; i < out.reports.size(); ++i)
    if (key(out.reports[i]) > key(out.reports[out.best])) out.best = i;
  return out;
}

}  // namespace zetalab::scaling
