#include "zetalab/scaling/prolate.hpp"

#include <algorithm>
#include <cmath>

#include "zetalab/error.hpp"
#include "zetalab/hp/matrix.hpp"
#include "zetalab/hp/quadrature.hpp"

namespace zetalab::scaling {

std::vector<Real> legendre_normalized(int n, const Real& X) {
  hp::PrecisionScope scope(X.precision());
  std::vector<Real> P(static_cast<std::size_t>(n) + 1);
  P[0] = Real(1);
  if (n >= 1) P[1] = X;
  for (int k = 1; k < n; ++k) P[k + 1] = (X * P[k] * (2L * k + 1) - P[k - 1] * static_cast<long>(k)) / (k + 1L);
  for (int k = 0; k <= n; ++k) P[k] *= hp::sqrt(Real(2L * k + 1) / 2L);
  return P;
}

std::vector<Real> PswfBasis::values(const Real& x) const {
  hp::PrecisionScope scope(bits);
  std::vector<Real> out(functions.size(), Real::with_bits(bits));
  if (hp::abs(x) > lambda || functions.empty()) return out;
  std::size_t terms = 0;
  for (const auto& f : functions) terms = std::max(terms, f.beta.size());
  const auto P = legendre_normalized(static_cast<int>(2 * terms - 2), x / lambda);
  const Real scale = Real(1) / hp::sqrt(lambda);
  for (std::size_t i = 0; i < functions.size(); ++i) {
    Real acc = Real::with_bits(bits);
    const auto& beta = functions[i].beta;
    for (std::size_t j = 0; j < beta.size(); ++j) mpfr_fma(acc.get(), beta[j].get(), P[2 * j].get(), acc.get(), MPFR_RNDN);
    out[i] = acc * scale;
  }
  return out;
}

Real PswfBasis::value(std::size_t i, const Real& x) const {
  hp::PrecisionScope scope(bits);
  if (hp::abs(x) > lambda) return Real::with_bits(bits);
  const auto& beta = functions.at(i).beta;
  const auto P = legendre_normalized(static_cast<int>(2 * beta.size() - 2), x / lambda);
  Real acc = Real::with_bits(bits);
  for (std::size_t j = 0; j < beta.size(); ++j) acc += beta[j] * P[2 * j];
  return acc / hp::sqrt(lambda);
}

Real PswfBasis::integral(std::size_t i) const {
  hp::PrecisionScope scope(bits);
  // int_{-1}^{1} Pbar_0 = sqrt 2 and the other Pbar_k integrate to zero.
  return functions.at(i).beta.front() * hp::sqrt(Real(2) * lambda);
}

PswfBasis pswf_basis(const Real& lambda, int count, Precision bits) {
  if (count < 1) throw DomainError("pswf_basis: count must be at least 1");
  if (!(lambda > Real(0))) throw DomainError("pswf_basis: lambda must be positive");
  const Precision wp = bits + 32;
  hp::PrecisionScope scope(wp);
  PswfBasis out;
  out.lambda = lambda.at_precision(wp);
  out.bits = wp;
  out.c = hp::pi(wp) * out.lambda * out.lambda * 2L;
  const Real c2 = out.c * out.c;
  const double cd = out.c.to_double();
  const Real tail = hp::epsilon(bits);

  int terms = count + static_cast<int>(std::ceil(0.75 * cd)) + static_cast<int>(bits / 8) + 16;
  for (int attempt = 0;; ++attempt) {
    std::vector<Real> d(terms), e(terms);
    for (int j = 0; j < terms; ++j) {
      const long k = 2L * j;
      d[j] = Real(k * (k + 1)) + c2 * Real(2 * k * (k + 1) - 1) / Real((2 * k + 3) * (2 * k - 1));
      e[j] = c2 * Real((k + 2) * (k + 1)) / (Real(2 * k + 3) * hp::sqrt(Real((2 * k + 1) * (2 * k + 5))));
    }
    const auto chi = hp::tridiagonal_eigenvalues(d, e, wp);
    out.functions.clear();
    bool resolved = true;
    for (int i = 0; i < count; ++i) {
      auto beta = hp::tridiagonal_eigenvector(d, e, chi[i], wp);
      if (hp::abs(beta.back()) > tail) {
        resolved = false;
        break;
      }
      // Sign convention: psi(0) > 0.
      const auto P0 = legendre_normalized(2 * terms - 2, Real::with_bits(wp));
      Real at0 = Real::with_bits(wp);
      for (int j = 0; j < terms; ++j) at0 += beta[j] * P0[2 * j];
      if (at0.sign() < 0)
        for (auto& b : beta) b = -b;
      Pswf f;
      f.order = 2 * i;
      f.chi = chi[i];
      const Real alpha = hp::sqrt(Real(2)) * beta[0] / hp::abs(at0);
      f.mu = out.c * alpha * alpha / (hp::pi(wp) * 2L);
      f.beta = std::move(beta);
      out.functions.push_back(std::move(f));
    }
    if (resolved) break;
    if (attempt == 6) throw ConvergenceError("pswf_basis: Legendre expansion did not converge");
    terms = terms * 3 / 2;
  }

  const Real floor_mu = hp::epsilon(bits / 2);
  for (int i = 0; i < count; ++i) {
    const Real& mu = out.functions[i].mu;
    if (!(mu > floor_mu) || !(mu < Real(1) + hp::epsilon(bits)))
      throw DomainError("pswf_basis: mode " + std::to_string(2 * i) + " not resolved at " + std::to_string(bits) +
                        " bits");
    // Leading modes agree with 1 to beyond working precision; only an
    // increase larger than rounding counts as a failure.
    if (i > 0 && mu > out.functions[i - 1].mu + hp::epsilon(bits - 8))
      throw DomainError("pswf_basis: band-limiting eigenvalues fail to decrease at mode " + std::to_string(2 * i));
  }
  return out;
}

LogSamples sample_E(const PswfBasis& basis, std::size_t count, double max_frequency) {
  if (count > basis.functions.size()) throw DomainError("sample_E: count exceeds the basis");
  const Precision bits = basis.bits;
  hp::PrecisionScope scope(bits);
  const Real L = hp::log(basis.lambda);
  const long nmax = hp::floor(basis.lambda * basis.lambda * (Real(1) + hp::epsilon(bits - 8))).to_long();
  std::vector<Real> breaks{-L};
  for (long n = nmax; n >= 1; --n) {
    Real b = hp::log(basis.lambda / Real(n));
    if (b > -L + hp::epsilon(bits - 8)) breaks.push_back(std::move(b));
  }
  if (hp::abs(breaks.back() - L) > hp::epsilon(bits - 8)) breaks.push_back(L);
  breaks.back() = L;

  const int gl = static_cast<int>(bits / 4) + 16;
  const auto rule = hp::gauss_legendre(gl, bits);
  // Along a piece x = n e^t moves at rate x <= lambda, so the PSWF phase
  // changes at rate at most c.
  const double rate = basis.c.to_double() + max_frequency;
  LogSamples out;
  out.values.assign(count, {});
  auto add_node = [&](const Real& t, const Real& w) {
    const Real u = hp::exp(t);
    const long N = hp::floor(basis.lambda / u).to_long();
    std::vector<Real> acc(count, Real::with_bits(bits));
    for (long n = 1; n <= N; ++n) {
      const auto v = basis.values(u * n);
      for (std::size_t i = 0; i < count; ++i) acc[i] += v[i];
    }
    const Real root = hp::exp(t / 2L);
    for (std::size_t i = 0; i < count; ++i) out.values[i].push_back(acc[i] * root);
    out.t.push_back(t);
    out.w.push_back(w);
  };
  for (std::size_t p = 0; p + 1 < breaks.size(); ++p) {
    const Real len = breaks[p + 1] - breaks[p];
    const long panels = std::max(1L, static_cast<long>(std::ceil(len.to_double() * rate / 6.0)));
    for (long q = 0; q < panels; ++q) {
      const Real a = breaks[p] + len * q / panels;
      const Real b = breaks[p] + len * (q + 1) / panels;
      const Real half = (b - a) / 2L, mid = (a + b) / 2L;
      for (std::size_t i = 0; i < rule->nodes.size(); ++i) {
        const Real& x = rule->nodes[i];
        const Real w = rule->weights[i] * half;
        if (x.is_zero()) {
          add_node(mid, w);
        } else {
          add_node(mid - half * x, w);
          add_node(mid + half * x, w);
        }
      }
    }
  }
  return out;
}

Real ProlateBundle::value(std::size_t j, const Real& u) const {
  hp::PrecisionScope scope(bits);
  const Real inv = Real(1) / lambda;
  if (u < inv || u > lambda) return Real::with_bits(bits);
  const auto& a = combos.at(j);
  const long N = hp::floor(lambda / u).to_long();
  Real acc = Real::with_bits(bits);
  for (long n = 1; n <= N; ++n) {
    const auto v = basis.values(u * n);
    for (std::size_t i = 0; i < a.size(); ++i) acc += a[i] * v[i];
  }
  return acc * hp::sqrt(u);
}

namespace {

Real dot(const std::vector<Real>& x, const std::vector<Real>& y) {
  Real acc = Real::with_bits(x.front().precision());
  for (std::size_t i = 0; i < x.size(); ++i) mpfr_fma(acc.get(), x[i].get(), y[i].get(), acc.get(), MPFR_RNDN);
  return acc;
}

// Weighted inner products of sampled functions.
std::vector<std::vector<Real>> gram(const LogSamples& s, const std::vector<std::vector<Real>>& f) {
  std::vector<std::vector<Real>> wf(f.size());
  for (std::size_t a = 0; a < f.size(); ++a) {
    wf[a] = f[a];
    for (std::size_t q = 0; q < s.w.size(); ++q) wf[a][q] *= s.w[q];
  }
  std::vector<std::vector<Real>> G(f.size(), std::vector<Real>(f.size()));
  for (std::size_t a = 0; a < f.size(); ++a)
    for (std::size_t b = 0; b <= a; ++b) G[a][b] = G[b][a] = dot(wf[a], f[b]);
  return G;
}

std::vector<std::vector<Real>> combine(const std::vector<std::vector<Real>>& coeffs,
                                       const std::vector<std::vector<Real>>& rows) {
  std::vector<std::vector<Real>> out;
  for (const auto& c : coeffs) {
    std::vector<Real> v(rows.front().size(), Real::with_bits(rows.front().front().precision()));
    for (std::size_t i = 0; i < c.size(); ++i)
      for (std::size_t q = 0; q < v.size(); ++q) mpfr_fma(v[q].get(), c[i].get(), rows[i][q].get(), v[q].get(), MPFR_RNDN);
    out.push_back(std::move(v));
  }
  return out;
}

}  // namespace

ProlateBundle prolate_vectors(const Real& lambda, int k, Precision bits) {
  if (k < 1) throw DomainError("prolate_vectors: k must be at least 1");
  ProlateBundle out;
  out.basis = pswf_basis(lambda, k + 2, bits);
  const Precision wp = out.basis.bits;
  hp::PrecisionScope scope(wp);
  out.lambda = out.basis.lambda;
  out.count = k;
  out.bits = bits;
  const std::size_t m = static_cast<std::size_t>(k) + 2;
  for (const auto& f : out.basis.functions) out.pswf_eigenvalues.push_back(f.mu);

  // Null space of the two functionals f(0) and F f(0) on span{P_lambda psi_i}.
  const auto at0 = out.basis.values(Real::with_bits(wp));
  std::vector<std::vector<Real>> Q;
  std::vector<Real> r1 = at0, r2(m);
  for (std::size_t i = 0; i < m; ++i) r2[i] = out.basis.integral(i);
  auto orthogonalize = [&](std::vector<Real>& v) {
    for (int pass = 0; pass < 2; ++pass)
      for (const auto& q : Q) {
        const Real p = dot(q, v);
        for (std::size_t i = 0; i < m; ++i) v[i] -= p * q[i];
      }
    return hp::sqrt(dot(v, v));
  };
  for (auto* r : {&r1, &r2}) {
    const Real n = orthogonalize(*r);
    if (!(n > hp::epsilon(bits / 2))) throw DomainError("prolate_vectors: constraints are dependent");
    for (auto& x : *r) x /= n;
    Q.push_back(*r);
  }
  std::vector<std::vector<Real>> null;
  for (std::size_t i = 0; i < m && null.size() < static_cast<std::size_t>(k); ++i) {
    std::vector<Real> v(m, Real::with_bits(wp));
    v[i] = Real(1);
    const Real n = orthogonalize(v);
    if (n < Real(0.25)) continue;
    for (auto& x : v) x /= n;
    Q.push_back(v);
    null.push_back(std::move(v));
  }
  if (null.size() != static_cast<std::size_t>(k)) throw DomainError("prolate_vectors: rank deficiency in S^ev_0 projection");

  // Cholesky of the Gram matrix of E(f_a) restricted to [lambda^-1, lambda].
  const auto samples = sample_E(out.basis, m, 0.0);
  const auto E = combine(null, samples.values);
  const auto G = gram(samples, E);
  std::vector<std::vector<Real>> Lc(k, std::vector<Real>(k, Real::with_bits(wp)));
  Real pivot_max = Real::with_bits(wp), pivot_min;
  for (int i = 0; i < k; ++i) {
    for (int j = 0; j <= i; ++j) {
      Real s = G[i][j];
      for (int l = 0; l < j; ++l) s -= Lc[i][l] * Lc[j][l];
      if (i == j) {
        if (!(s > Real(0))) throw DomainError("prolate_vectors: rank deficiency after applying E");
        Lc[i][i] = hp::sqrt(s);
        if (Lc[i][i] > pivot_max) pivot_max = Lc[i][i];
        if (i == 0 || Lc[i][i] < pivot_min) pivot_min = Lc[i][i];
      } else {
        Lc[i][j] = s / Lc[j][j];
      }
    }
  }
  out.conditioning = pivot_min / pivot_max;
  if (!(out.conditioning > hp::epsilon(bits / 2)))
    throw DomainError("prolate_vectors: rank deficiency after applying E (relative pivot " +
                      out.conditioning.to_string(3) + ")");
  // combos = L^{-1} null, by forward substitution.
  out.combos.assign(k, std::vector<Real>(m, Real::with_bits(wp)));
  for (int i = 0; i < k; ++i) {
    for (std::size_t c = 0; c < m; ++c) {
      Real s = null[i][c];
      for (int l = 0; l < i; ++l) s -= Lc[i][l] * out.combos[l][c];
      out.combos[i][c] = s / Lc[i][i];
    }
  }
  const auto Gn = gram(samples, combine(out.combos, samples.values));
  out.gram_defect = Real::with_bits(wp);
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < k; ++j) {
      const Real d = hp::abs(Gn[i][j] - Real(i == j ? 1 : 0));
      if (d > out.gram_defect) out.gram_defect = d;
    }
  return out;
}

std::vector<std::vector<Complex>> log_fourier_coefficients(const ProlateBundle& b, int K) {
  const Precision wp = b.basis.bits;
  hp::PrecisionScope scope(wp);
  const Real L = hp::log(b.lambda);
  const Real omega1 = hp::pi(wp) / L;
  const auto samples = sample_E(b.basis, b.combos.front().size(), omega1.to_double() * K);
  const auto g = combine(b.combos, samples.values);
  const Real norm = Real(1) / hp::sqrt(L * 2L);
  std::vector<std::vector<Complex>> out(g.size(), std::vector<Complex>(2 * K + 1, Complex::zero(wp)));
  for (std::size_t q = 0; q < samples.t.size(); ++q) {
    // e^{-i omega_m t} for m = 0..K by repeated multiplication.
    const Complex step = Complex::polar(-(omega1 * samples.t[q]));
    Complex z(Real(1), Real::with_bits(wp));
    for (int mm = 0; mm <= K; ++mm) {
      for (std::size_t j = 0; j < g.size(); ++j) {
        const Real gw = g[j][q] * samples.w[q];
        out[j][K + mm] += z * gw;
        if (mm > 0) out[j][K - mm] += hp::conj(z) * gw;
      }
      z = z * step;
    }
  }
  for (auto& row : out)
    for (auto& c : row) c *= norm;
  return out;
}

}  // namespace zetalab::scaling
