#include "zetalab/weil/gram.hpp"

#include <algorithm>
#include <cmath>

#include "zetalab/error.hpp"
#include "zetalab/hp/quadrature.hpp"

namespace zetalab::weil {

Complex qw(const LogBandFunction& f, const LogBandFunction& g, ArchRule rule) {
  const LogBandFunction h = star_convolve(g, f);
  const Precision bits = h.precision();
  hp::PrecisionScope scope(bits);
  const Real zero = Real::with_bits(bits);
  Complex out = h.mellin(Complex(zero, Real(0.5))) + h.mellin(Complex(zero, Real(-0.5)));
  out -= w_arch(h, rule);
  const Real pmax = hp::floor(hp::exp(h.support_log()) + Real(1e-20));
  for (unsigned long p : primes_up_to(static_cast<unsigned long>(pmax.to_long()))) out -= w_prime(p, h);
  return out;
}

Complex weil_gram_entry_general(const Real& lambda, int j, int k, Precision bits, ArchRule rule) {
  hp::PrecisionScope scope(bits);
  const Real lam = lambda.at_precision(bits);
  return qw(LogBandFunction::basis(lam, j), LogBandFunction::basis(lam, k), rule);
}

namespace {

struct ArchIntegrals {
  std::vector<Real> S;  // S(w_k), k = 0..K
  std::vector<Real> D;  // D(w_k), k = 0..K
};

// Composite Gauss-Legendre on [0, 2L] with `panels` panels of n nodes; all
// frequencies at once through powers of e^{i pi t / L}.
ArchIntegrals arch_integrals(const Real& L, int K, int panels, int n, Precision wp) {
  hp::PrecisionScope scope(wp);
  ArchIntegrals out;
  out.S.assign(K + 1, Real::with_bits(wp));
  out.D.assign(K + 1, Real::with_bits(wp));
  const auto rule = hp::gauss_legendre(n, wp);
  const Real twoL = L * 2L;
  const Real h = twoL / static_cast<long>(panels);
  const Real theta_scale = hp::pi(wp) / L;
  Real c, s, ck, sk, tmp;
  auto add = [&](const Real& t, const Real& weight) {
    const Real e = hp::exp(t / 2L);
    const Real sh = hp::sinh(t);
    const Real ws = e / (sh * 2L) * weight;          // sin weight
    const Real ramp = (Real(1) - t / twoL) * e / sh * weight;  // cos weight
    const Real flat = weight / sh;
    hp::sin_cos(theta_scale * t, s, c);
    ck = Real(1);
    sk = Real(0);
    for (int k = 0; k <= K; ++k) {
      if (k > 0) {
        // (ck + i sk) *= (c + i s)
        tmp = ck * c - sk * s;
        sk = sk * c + ck * s;
        ck = tmp;
      }
      out.S[k] += sk * ws;
      out.D[k] += ck * ramp - flat;
    }
  };
  for (int p = 0; p < panels; ++p) {
    const Real a = h * static_cast<long>(p);
    const Real half = h / 2L;
    const Real mid = a + half;
    for (std::size_t i = 0; i < rule->nodes.size(); ++i) {
      const Real wt = rule->weights[i] * half;
      if (rule->nodes[i].is_zero()) {
        add(mid, wt);
      } else {
        const Real dx = half * rule->nodes[i];
        add(mid + dx, wt);
        add(mid - dx, wt);
      }
    }
  }
  return out;
}

}  // namespace

WeilGram weil_gram(const Real& lambda, int K, Precision bits) {
  if (K < 0) throw DomainError("weil_gram: K must be nonnegative");
  if (!(lambda > Real(1))) throw DomainError("weil_gram: lambda must exceed 1");
  const Precision wp = bits + 64;
  hp::PrecisionScope scope(wp);
  const Real lam = lambda.at_precision(wp);
  const Real L = hp::log(lam);
  const Real twoL = L * 2L;
  const Real pi = hp::pi(wp);

  // Panels short enough that each holds a few oscillations of the top frequency.
  const double top = M_PI * std::max(K, 1) / L.to_double();
  int panels = static_cast<int>(std::ceil(twoL.to_double() * std::max(8.0, top / 4.0)));
  int n = static_cast<int>(bits / 6 + 32);
  const Real target = hp::epsilon(bits + 8);
  ArchIntegrals arch;
  double qerr = 0;
  for (int attempt = 0;; ++attempt) {
    arch = arch_integrals(L, K, panels, n, wp);
    const ArchIntegrals check = arch_integrals(L, K, panels, n + n / 3, wp);
    Real diff(0);
    for (int k = 0; k <= K; ++k)
      diff = hp::max(diff, hp::max(hp::abs(arch.S[k] - check.S[k]), hp::abs(arch.D[k] - check.D[k])));
    qerr = diff.to_double();
    arch = check;
    if (diff <= target) break;
    if (attempt == 4) throw ConvergenceError("weil_gram: archimedean integrals did not converge");
    panels *= 2;
  }

  // Prime powers p^m <= lambda^2: sin and ramped cos sums per frequency.
  std::vector<Real> Ps(K + 1, Real::with_bits(wp)), Pc(K + 1, Real::with_bits(wp));
  const Real tol = hp::epsilon(wp - 16) * (Real(1) + twoL);
  const Real lam2 = hp::floor(lam * lam + Real(1e-20));
  for (unsigned long p : primes_up_to(static_cast<unsigned long>(lam2.to_long()))) {
    const Real logp = hp::log(Real(p));
    const Real rp = hp::sqrt(Real(p));
    Real wt = logp / rp;
    for (long m = 1;; ++m) {
      Real t = logp * m;
      if (t > twoL + tol) break;
      if (t > twoL) t = twoL;
      const Real ramp = (Real(1) - t / twoL) * 2L;
      for (int k = 0; k <= K; ++k) {
        Real sk, ck;
        hp::sin_cos(pi * static_cast<long>(k) * t / L, sk, ck);
        Ps[k] += sk * wt;
        Pc[k] += ck * ramp * wt;
      }
      wt /= rp;
    }
  }

  WeilGram g;
  g.lambda = lam.at_precision(bits);
  g.K = K;
  g.bits = bits;
  g.quadrature_error = qerr;
  const Real norm = Real(1) / hp::sqrt(twoL);
  const Real sh = hp::sinh(L / 2L) * 2L * norm;
  std::vector<Complex> a(2 * K + 1);
  for (int k = -K; k <= K; ++k) {
    const Complex den(Real(0.5), pi * static_cast<long>(k) / L);
    a[k + K] = Complex(k % 2 == 0 ? sh : -sh) / den;
  }
  auto Stot = [&](int k) { return k >= 0 ? arch.S[k] + Ps[k] : -(arch.S[-k] + Ps[-k]); };
  const Real diag_const = hp::log(pi * 4L) + hp::euler_gamma(wp) + hp::log(hp::tanh(L));
  const std::size_t dim = 2 * K + 1;
  std::vector<Real> entries(dim * dim);
  for (int j = -K; j <= K; ++j)
    for (int k = j; k <= K; ++k) {
      const Complex aa = a[j + K] * a[k + K];
      Real v = aa.re * 2L;
      if (j == k) {
        const int ak = std::abs(k);
        v -= diag_const + arch.D[ak] + Pc[ak];
      } else {
        const Real c = ((k - j) % 2 == 0 ? Real(1) : Real(-1)) / (pi * static_cast<long>(k - j));
        v -= c * (Stot(j) - Stot(k));
      }
      v = v.at_precision(bits);
      entries[(j + K) * dim + (k + K)] = v;
      entries[(k + K) * dim + (j + K)] = v;
    }
  g.matrix = hp::HPMatrix::real(dim, std::move(entries), bits);
  for (auto& z : a) z = z.at_precision(bits);
  g.pole = std::move(a);
  return g;
}

namespace {

GramSpectrum spectrum_on(const WeilGram& g, const std::vector<std::vector<Real>>& Q, bool want_vectors) {
  const Precision bits = g.bits;
  hp::PrecisionScope scope(bits + 32);
  const std::size_t n = g.matrix.dim();
  const std::size_t m = Q.size();
  // GQ columns, then Q^T G Q.
  std::vector<std::vector<Real>> GQ(m, std::vector<Real>(n, Real::with_bits(bits + 32)));
  for (std::size_t c = 0; c < m; ++c)
    for (std::size_t i = 0; i < n; ++i) {
      Real acc = Real::with_bits(bits + 32);
      for (std::size_t k = 0; k < n; ++k) acc += g.matrix.re(i, k) * Q[c][k];
      GQ[c][i] = std::move(acc);
    }
  std::vector<Real> M(m * m);
  for (std::size_t r = 0; r < m; ++r)
    for (std::size_t c = r; c < m; ++c) {
      Real acc = Real::with_bits(bits + 32);
      for (std::size_t k = 0; k < n; ++k) acc += Q[r][k] * GQ[c][k];
      M[r * m + c] = acc.at_precision(bits);
      M[c * m + r] = M[r * m + c];
    }
  const auto reduced = hp::HPMatrix::real(m, std::move(M), bits);
  GramSpectrum out;
  out.dim = m;
  if (!want_vectors) {
    out.values = hp::symmetric_eigenvalues(reduced);
    return out;
  }
  const auto eig = hp::symmetric_eigen(reduced, true);
  out.values = eig.values;
  out.residuals = eig.residuals;
  out.dim = m;
  out.sweeps = eig.sweeps;
  if (want_vectors) {
    for (const auto& y : eig.vectors) {
      std::vector<Real> v(n, Real::with_bits(bits));
      for (std::size_t c = 0; c < m; ++c)
        for (std::size_t k = 0; k < n; ++k) v[k] += Q[c][k] * y[c].re;
      out.vectors.push_back(std::move(v));
    }
  }
  return out;
}

// Orthonormal basis of the complement of span(us), by modified Gram-Schmidt
// of the unit vectors against us.
std::vector<std::vector<Real>> complement(std::vector<std::vector<Real>> us, std::size_t n, Precision bits) {
  hp::PrecisionScope scope(bits);
  auto dot = [&](const std::vector<Real>& x, const std::vector<Real>& y) {
    Real acc = Real::with_bits(bits);
    for (std::size_t i = 0; i < n; ++i) acc += x[i] * y[i];
    return acc;
  };
  auto orthogonalize = [&](std::vector<Real>& v, const std::vector<std::vector<Real>>& basis) {
    for (int pass = 0; pass < 2; ++pass)
      for (const auto& b : basis) {
        const Real c = dot(v, b);
        for (std::size_t i = 0; i < n; ++i) v[i] -= c * b[i];
      }
  };
  std::vector<std::vector<Real>> frame;
  for (auto& u : us) {
    orthogonalize(u, frame);
    const Real nu = hp::sqrt(dot(u, u));
    if (nu < hp::epsilon(bits / 2)) continue;
    for (auto& x : u) x /= nu;
    frame.push_back(std::move(u));
  }
  const std::size_t fixed = frame.size();
  std::vector<std::vector<Real>> out;
  for (std::size_t e = 0; e < n && frame.size() < n; ++e) {
    std::vector<Real> v(n, Real::with_bits(bits));
    v[e] = Real(1);
    orthogonalize(v, frame);
    const Real nv = hp::sqrt(dot(v, v));
    if (nv < Real(1e-3)) continue;
    for (auto& x : v) x /= nv;
    frame.push_back(v);
    out.push_back(std::move(v));
  }
  if (out.size() + fixed != n) throw ConvergenceError("constrained_spectrum: complement basis is incomplete");
  return out;
}

}  // namespace

GramSpectrum full_spectrum(const WeilGram& g, bool want_vectors) {
  GramSpectrum out;
  if (!want_vectors) {
    out.values = hp::symmetric_eigenvalues(g.matrix);
    out.dim = g.matrix.dim();
    return out;
  }
  const auto eig = hp::symmetric_eigen(g.matrix, true);
  out.values = eig.values;
  out.residuals = eig.residuals;
  out.dim = g.matrix.dim();
  out.sweeps = eig.sweeps;
  for (const auto& v : eig.vectors) {
    std::vector<Real> r;
    for (const auto& z : v) r.push_back(z.re);
    out.vectors.push_back(std::move(r));
  }
  return out;
}

GramSpectrum constrained_spectrum(const WeilGram& g, bool want_vectors) {
  const std::size_t n = g.matrix.dim();
  const Precision bits = g.bits + 32;
  std::vector<Real> re, im;
  for (const auto& z : g.pole) {
    re.push_back(z.re.at_precision(bits));
    im.push_back(z.im.at_precision(bits));
  }
  return spectrum_on(g, complement({re, im}, n, bits), want_vectors);
}

Complex quadratic_form(const WeilGram& g, const std::vector<Complex>& c) {
  const std::size_t n = g.matrix.dim();
  if (c.size() != n) throw DomainError("quadratic_form: coefficient vector has the wrong length");
  hp::PrecisionScope scope(g.bits);
  Complex acc = Complex::zero(g.bits);
  for (std::size_t i = 0; i < n; ++i) {
    Complex row = Complex::zero(g.bits);
    for (std::size_t k = 0; k < n; ++k) row += c[k] * g.matrix.re(i, k);
    acc += hp::conj(c[i]) * row;
  }
  return acc;
}

}  // namespace zetalab::weil
