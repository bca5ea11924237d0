#include "zetalab/hp/matrix.hpp"

#include <algorithm>
#include <numeric>

#include "zetalab/error.hpp"

namespace zetalab::hp {

namespace {

void check_defect(const Real& defect, Precision bits) {
  if (defect > epsilon(bits / 2)) {
    throw ValidationError("matrix is not Hermitian to working precision (relative defect " + defect.to_string(4) +
                          " at " + std::to_string(bits) + " bits)");
  }
}

// In-place cyclic Jacobi on a dense row-major symmetric matrix a (n x n).
// v accumulates rotations when non-null. Returns the number of sweeps.
int jacobi_sweeps(std::size_t n, std::vector<Real>& a, std::vector<Real>* v, Precision bits, int guard_bits,
                  int max_sweeps, Real& off_out) {
  auto A = [&](std::size_t i, std::size_t j) -> mpfr_ptr { return a[i * n + j].get(); };
  Real fro = Real::with_bits(bits);
  for (const auto& x : a) fro += x * x;
  fro = sqrt(fro);
  const Real target = fro * epsilon(bits - guard_bits);
  const Real skip = target / static_cast<long>(std::max<std::size_t>(n, 1));

  Real theta = Real::with_bits(bits), t = Real::with_bits(bits), c = Real::with_bits(bits),
       s = Real::with_bits(bits), tau = Real::with_bits(bits), g = Real::with_bits(bits),
       h = Real::with_bits(bits), tmp = Real::with_bits(bits), off = Real::with_bits(bits);
  const Real one = Real(1).at_precision(bits);
  for (int sweep = 0; sweep <= max_sweeps; ++sweep) {
    mpfr_set_zero(off.get(), 1);
    for (std::size_t p = 0; p < n; ++p)
      for (std::size_t q = p + 1; q < n; ++q) mpfr_fma(off.get(), A(p, q), A(p, q), off.get(), MPFR_RNDN);
    mpfr_mul_2ui(off.get(), off.get(), 1, MPFR_RNDN);
    mpfr_sqrt(off.get(), off.get(), MPFR_RNDN);
    if (off <= target) {
      off_out = off;
      return sweep;
    }
    if (sweep == max_sweeps) break;
    for (std::size_t p = 0; p < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        if (mpfr_cmpabs(A(p, q), skip.get()) <= 0) continue;
        // theta = (a_qq - a_pp) / (2 a_pq); t = sgn(theta) / (|theta| + sqrt(theta^2 + 1))
        mpfr_sub(theta.get(), A(q, q), A(p, p), MPFR_RNDN);
        mpfr_div(theta.get(), theta.get(), A(p, q), MPFR_RNDN);
        mpfr_div_2ui(theta.get(), theta.get(), 1, MPFR_RNDN);
        mpfr_hypot(tmp.get(), theta.get(), one.get(), MPFR_RNDN);
        mpfr_abs(t.get(), theta.get(), MPFR_RNDN);
        mpfr_add(t.get(), t.get(), tmp.get(), MPFR_RNDN);
        mpfr_ui_div(t.get(), 1, t.get(), MPFR_RNDN);
        if (mpfr_sgn(theta.get()) < 0) mpfr_neg(t.get(), t.get(), MPFR_RNDN);
        // c = 1/sqrt(t^2+1), s = t c, tau = s / (1 + c)
        mpfr_hypot(c.get(), t.get(), one.get(), MPFR_RNDN);
        mpfr_ui_div(c.get(), 1, c.get(), MPFR_RNDN);
        mpfr_mul(s.get(), t.get(), c.get(), MPFR_RNDN);
        mpfr_add_ui(tau.get(), c.get(), 1, MPFR_RNDN);
        mpfr_div(tau.get(), s.get(), tau.get(), MPFR_RNDN);
        // diagonal update
        mpfr_mul(tmp.get(), t.get(), A(p, q), MPFR_RNDN);
        mpfr_sub(A(p, p), A(p, p), tmp.get(), MPFR_RNDN);
        mpfr_add(A(q, q), A(q, q), tmp.get(), MPFR_RNDN);
        mpfr_set_zero(A(p, q), 1);
        mpfr_set_zero(A(q, p), 1);
        for (std::size_t r = 0; r < n; ++r) {
          if (r == p || r == q) continue;
          // g = a_rp, h = a_rq; a_rp = g - s (h + g tau); a_rq = h + s (g - h tau)
          mpfr_set(g.get(), A(r, p), MPFR_RNDN);
          mpfr_set(h.get(), A(r, q), MPFR_RNDN);
          mpfr_fma(tmp.get(), g.get(), tau.get(), h.get(), MPFR_RNDN);
          mpfr_mul(tmp.get(), tmp.get(), s.get(), MPFR_RNDN);
          mpfr_sub(A(r, p), g.get(), tmp.get(), MPFR_RNDN);
          mpfr_set(A(p, r), A(r, p), MPFR_RNDN);
          mpfr_fms(tmp.get(), h.get(), tau.get(), g.get(), MPFR_RNDN);  // h tau - g
          mpfr_mul(tmp.get(), tmp.get(), s.get(), MPFR_RNDN);
          mpfr_sub(A(r, q), h.get(), tmp.get(), MPFR_RNDN);
          mpfr_set(A(q, r), A(r, q), MPFR_RNDN);
        }
        if (v != nullptr) {
          auto V = [&](std::size_t i, std::size_t j) -> mpfr_ptr { return (*v)[i * n + j].get(); };
          for (std::size_t r = 0; r < n; ++r) {
            mpfr_set(g.get(), V(r, p), MPFR_RNDN);
            mpfr_set(h.get(), V(r, q), MPFR_RNDN);
            mpfr_fma(tmp.get(), g.get(), tau.get(), h.get(), MPFR_RNDN);
            mpfr_mul(tmp.get(), tmp.get(), s.get(), MPFR_RNDN);
            mpfr_sub(V(r, p), g.get(), tmp.get(), MPFR_RNDN);
            mpfr_fms(tmp.get(), h.get(), tau.get(), g.get(), MPFR_RNDN);
            mpfr_mul(tmp.get(), tmp.get(), s.get(), MPFR_RNDN);
            mpfr_sub(V(r, q), h.get(), tmp.get(), MPFR_RNDN);
          }
        }
      }
    }
  }
  off_out = off;
  throw ConvergenceError("Jacobi iteration did not converge in " + std::to_string(max_sweeps) +
                         " sweeps (off-diagonal norm " + off.to_string(4) + ")");
}

}  // namespace

HPMatrix HPMatrix::real(std::size_t n, std::vector<Real> entries, Precision bits) {
  if (entries.size() != n * n) throw DomainError("HPMatrix: entry count does not match dimension");
  PrecisionScope scope(bits);
  HPMatrix m;
  m.n_ = n;
  m.bits_ = bits;
  for (auto& e : entries) e = e.at_precision(bits);
  Real scale = Real::with_bits(bits), defect = Real::with_bits(bits);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      scale = max(scale, abs(entries[i * n + j]));
      if (j > i) defect = max(defect, abs(entries[i * n + j] - entries[j * n + i]));
    }
  m.defect_ = scale.is_zero() ? defect : defect / scale;
  check_defect(m.defect_, bits);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      Real avg = (entries[i * n + j] + entries[j * n + i]) / 2L;
      entries[i * n + j] = avg;
      entries[j * n + i] = std::move(avg);
    }
  m.re_ = std::move(entries);
  return m;
}

HPMatrix HPMatrix::hermitian(std::size_t n, std::vector<Complex> entries, Precision bits) {
  if (entries.size() != n * n) throw DomainError("HPMatrix: entry count does not match dimension");
  PrecisionScope scope(bits);
  HPMatrix m;
  m.n_ = n;
  m.bits_ = bits;
  Real scale = Real::with_bits(bits), defect = Real::with_bits(bits);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      scale = max(scale, abs(entries[i * n + j]));
      if (j >= i) defect = max(defect, abs(entries[i * n + j] - conj(entries[j * n + i])));
    }
  m.defect_ = scale.is_zero() ? defect : defect / scale;
  check_defect(m.defect_, bits);
  m.re_.assign(n * n, Real::with_bits(bits));
  m.im_.assign(n * n, Real::with_bits(bits));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j) {
      const Complex avg = (entries[i * n + j] + conj(entries[j * n + i])) / 2L;
      m.re_[i * n + j] = avg.re.at_precision(bits);
      m.im_[i * n + j] = i == j ? Real::with_bits(bits) : avg.im.at_precision(bits);
      m.re_[j * n + i] = m.re_[i * n + j];
      m.im_[j * n + i] = -m.im_[i * n + j];
    }
  return m;
}

HPMatrix HPMatrix::identity(std::size_t n, Precision bits) {
  std::vector<Real> e(n * n, Real::with_bits(bits));
  for (std::size_t i = 0; i < n; ++i) e[i * n + i] = Real(1).at_precision(bits);
  return real(n, std::move(e), bits);
}

Real HPMatrix::im(std::size_t i, std::size_t j) const {
  return im_.empty() ? Real::with_bits(bits_) : im_[i * n_ + j];
}

Real HPMatrix::trace() const {
  Real t = Real::with_bits(bits_);
  for (std::size_t i = 0; i < n_; ++i) t += re_[i * n_ + i];
  return t;
}

Real HPMatrix::frobenius_norm() const {
  Real t = Real::with_bits(bits_);
  for (const auto& x : re_) t += x * x;
  for (const auto& x : im_) t += x * x;
  return sqrt(t);
}

EigenResult symmetric_eigen(const HPMatrix& m, bool want_vectors, int guard_bits, int max_sweeps) {
  const std::size_t n = m.dim();
  const Precision bits = m.precision();
  PrecisionScope scope(bits);
  EigenResult out;
  if (n == 0) return out;
  const bool cplx = m.is_complex();
  const std::size_t big = cplx ? 2 * n : n;

  std::vector<Real> a(big * big, Real::with_bits(bits));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      a[i * big + j] = m.re(i, j);
      if (cplx) {
        const Real b = m.im(i, j);
        a[(i + n) * big + (j + n)] = m.re(i, j);
        a[i * big + (j + n)] = -b;
        a[(i + n) * big + j] = b;
      }
    }
  std::vector<Real> v(big * big, Real::with_bits(bits));
  for (std::size_t i = 0; i < big; ++i) v[i * big + i] = Real(1);
  Real off;
  out.sweeps = jacobi_sweeps(big, a, &v, bits, guard_bits, max_sweeps, off);
  out.off_norm = off;

  std::vector<std::size_t> order(big);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t x, std::size_t y) { return a[x * big + x] < a[y * big + y]; });

  std::vector<std::vector<Complex>> vecs;
  std::vector<Real> vals;
  for (std::size_t idx : order) {
    std::vector<Complex> z(n);
    for (std::size_t r = 0; r < n; ++r) {
      z[r] = cplx ? Complex(v[r * big + idx], v[(r + n) * big + idx]) : Complex(v[r * big + idx]);
    }
    if (cplx) {
      // The embedding doubles each eigenvalue; keep a vector only if it is
      // independent of those already accepted.
      for (const auto& u : vecs) {
        Complex dot = Complex::zero(bits);
        for (std::size_t r = 0; r < n; ++r) dot += conj(u[r]) * z[r];
        for (std::size_t r = 0; r < n; ++r) z[r] -= u[r] * dot;
      }
      Real nrm = Real::with_bits(bits);
      for (const auto& x : z) nrm += norm(x);
      if (nrm < Real(0.25)) continue;
      nrm = sqrt(nrm);
      for (auto& x : z) x /= nrm;
    }
    vals.push_back(a[idx * big + idx]);
    vecs.push_back(std::move(z));
    if (vals.size() == n) break;
  }

  out.values = std::move(vals);
  out.residuals.reserve(n);
  for (std::size_t k = 0; k < n; ++k) {
    const auto& z = vecs[k];
    Real res = Real::with_bits(bits);
    for (std::size_t i = 0; i < n; ++i) {
      Complex acc = z[i] * (-out.values[k]);
      for (std::size_t j = 0; j < n; ++j) acc += m.at(i, j) * z[j];
      res += norm(acc);
    }
    out.residuals.push_back(sqrt(res));
  }
  if (want_vectors) out.vectors = std::move(vecs);
  return out;
}

std::vector<Real> tridiagonal_eigenvalues(std::vector<Real> d, std::vector<Real> e, Precision bits) {
  const std::size_t n = d.size();
  if (e.size() + 1 < n) throw DomainError("tridiagonal_eigenvalues: off-diagonal too short");
  PrecisionScope scope(bits);
  e.resize(n, Real::with_bits(bits));
  if (n == 0) return d;
  for (auto& x : d) x = x.at_precision(bits);
  for (auto& x : e) x = x.at_precision(bits);
  mpfr_set_zero(e[n - 1].get(), 1);
  Real f = Real::with_bits(bits), g = Real::with_bits(bits);
  // Implicit QL with Wilkinson-type shifts.
  const Real eps = epsilon(bits);
  Real r = Real::with_bits(bits), s = Real::with_bits(bits), c = Real::with_bits(bits), p = Real::with_bits(bits),
       b = Real::with_bits(bits);
  for (std::size_t l = 0; l < n; ++l) {
    int iter = 0;
    std::size_t mm;
    do {
      for (mm = l; mm + 1 < n; ++mm) {
        const Real dd = abs(d[mm]) + abs(d[mm + 1]);
        if (abs(e[mm]) <= eps * dd) break;
      }
      if (mm != l) {
        if (iter++ == 60) throw ConvergenceError("tridiagonal_eigenvalues: QL did not converge");
        g = (d[l + 1] - d[l]) / (e[l] * 2L);
        r = hypot(g, Real(1));
        g = d[mm] - d[l] + e[l] / (g + (g.sign() >= 0 ? abs(r) : -abs(r)));
        s = Real(1);
        c = Real(1);
        mpfr_set_zero(p.get(), 1);
        bool underflow = false;
        for (std::size_t ii = mm; ii-- > l;) {
          f = s * e[ii];
          b = c * e[ii];
          r = hypot(f, g);
          e[ii + 1] = r;
          if (r.is_zero()) {
            d[ii + 1] -= p;
            mpfr_set_zero(e[mm].get(), 1);
            underflow = true;
            break;
          }
          s = f / r;
          c = g / r;
          g = d[ii + 1] - p;
          r = (d[ii] - g) * s + c * b * 2L;
          p = s * r;
          d[ii + 1] = g + p;
          g = c * r - b;
        }
        if (underflow) continue;
        d[l] -= p;
        e[l] = g;
        mpfr_set_zero(e[mm].get(), 1);
      }
    } while (mm != l);
  }
  std::sort(d.begin(), d.end());
  return d;
}

std::vector<Real> tridiagonal_eigenvector(const std::vector<Real>& d, const std::vector<Real>& e,
                                          const Real& value, Precision bits) {
  const std::size_t n = d.size();
  if (n == 0) return {};
  if (e.size() + 1 < n) throw DomainError("tridiagonal_eigenvector: off-diagonal too short");
  PrecisionScope scope(bits);
  Real norm = Real::with_bits(bits);
  for (std::size_t i = 0; i < n; ++i) {
    Real row = abs(d[i]);
    if (i + 1 < n) row += abs(e[i]);
    if (i > 0) row += abs(e[i - 1]);
    if (row > norm) norm = row;
  }
  const Real tiny = epsilon(bits) * (norm + Real(1));

  // LU of T - value I with row interchanges: U has bands u0, u1, u2 and the
  // multipliers are kept with the pivot choice of each step.
  std::vector<Real> u0(n), u1(n, Real::with_bits(bits)), u2(n, Real::with_bits(bits)), mult(n, Real::with_bits(bits));
  std::vector<bool> swapped(n, false);
  Real diag = d[0] - value, up = n > 1 ? e[0] : Real::with_bits(bits);
  for (std::size_t i = 0; i + 1 < n; ++i) {
    const Real sub = e[i];
    const Real next_diag = d[i + 1] - value;
    const Real next_up = i + 2 < n ? e[i + 1] : Real::with_bits(bits);
    if (abs(sub) > abs(diag)) {
      swapped[i] = true;
      u0[i] = sub;
      u1[i] = next_diag;
      u2[i] = next_up;
      mult[i] = diag / sub;
      diag = up - mult[i] * next_diag;
      up = -(mult[i] * next_up);
    } else {
      if (diag.is_zero()) diag = tiny;
      u0[i] = diag;
      u1[i] = up;
      u2[i] = Real::with_bits(bits);
      mult[i] = sub / diag;
      diag = next_diag - mult[i] * up;
      up = next_up;
    }
  }
  if (abs(diag) < tiny) diag = tiny;
  u0[n - 1] = diag;

  std::vector<Real> x(n);
  for (std::size_t i = 0; i < n; ++i) x[i] = Real(1) + Real(static_cast<long>(i % 7)) / 13L;
  for (int iter = 0; iter < 4; ++iter) {
    // Forward elimination with the recorded interchanges.
    for (std::size_t i = 0; i + 1 < n; ++i) {
      if (swapped[i]) std::swap(x[i], x[i + 1]);
      x[i + 1] -= mult[i] * x[i];
    }
    for (std::size_t i = n; i-- > 0;) {
      Real acc = x[i];
      if (i + 1 < n) acc -= u1[i] * x[i + 1];
      if (i + 2 < n) acc -= u2[i] * x[i + 2];
      x[i] = acc / u0[i];
    }
    Real nrm = Real::with_bits(bits);
    for (const auto& v : x) nrm += v * v;
    nrm = sqrt(nrm);
    for (auto& v : x) v /= nrm;
  }
  std::size_t imax = 0;
  for (std::size_t i = 1; i < n; ++i)
    if (abs(x[i]) > abs(x[imax])) imax = i;
  if (x[imax].sign() < 0)
    for (auto& v : x) v = -v;
  return x;
}

std::vector<Real> symmetric_eigenvalues(const HPMatrix& m, int guard_bits) {
  if (m.is_complex()) throw DomainError("symmetric_eigenvalues: real symmetric input required");
  const std::size_t n = m.dim();
  const Precision bits = m.precision() + guard_bits;
  PrecisionScope scope(bits);
  if (n == 0) return {};
  std::vector<Real> a(n * n, Real::with_bits(bits));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) mpfr_set(a[i * n + j].get(), m.re(i, j).get(), MPFR_RNDN);
  auto A = [&](std::size_t i, std::size_t j) -> Real& { return a[i * n + j]; };
  std::vector<Real> d(n, Real::with_bits(bits)), e(n, Real::with_bits(bits));
  Real f = Real::with_bits(bits), g = Real::with_bits(bits), h = Real::with_bits(bits),
       scale = Real::with_bits(bits), tmp = Real::with_bits(bits);

  // Householder tridiagonalization on the lower triangle.
  for (std::size_t i = n - 1; i >= 1; --i) {
    const std::size_t l = i - 1;
    mpfr_set_zero(h.get(), 1);
    if (l > 0) {
      mpfr_set_zero(scale.get(), 1);
      for (std::size_t k = 0; k <= l; ++k) {
        mpfr_abs(tmp.get(), A(i, k).get(), MPFR_RNDN);
        mpfr_add(scale.get(), scale.get(), tmp.get(), MPFR_RNDN);
      }
      if (scale.is_zero()) {
        e[i] = A(i, l);
      } else {
        for (std::size_t k = 0; k <= l; ++k) {
          mpfr_div(A(i, k).get(), A(i, k).get(), scale.get(), MPFR_RNDN);
          mpfr_fma(h.get(), A(i, k).get(), A(i, k).get(), h.get(), MPFR_RNDN);
        }
        f = A(i, l);
        g = sqrt(h);
        if (f.sign() >= 0) g = -g;
        e[i] = scale * g;
        h -= f * g;
        A(i, l) = f - g;
        mpfr_set_zero(f.get(), 1);
        for (std::size_t j = 0; j <= l; ++j) {
          mpfr_set_zero(g.get(), 1);
          for (std::size_t k = 0; k <= j; ++k) mpfr_fma(g.get(), A(j, k).get(), A(i, k).get(), g.get(), MPFR_RNDN);
          for (std::size_t k = j + 1; k <= l; ++k)
            mpfr_fma(g.get(), A(k, j).get(), A(i, k).get(), g.get(), MPFR_RNDN);
          mpfr_div(e[j].get(), g.get(), h.get(), MPFR_RNDN);
          mpfr_fma(f.get(), e[j].get(), A(i, j).get(), f.get(), MPFR_RNDN);
        }
        const Real hh = f / (h * 2L);
        for (std::size_t j = 0; j <= l; ++j) {
          f = A(i, j);
          mpfr_mul(tmp.get(), hh.get(), f.get(), MPFR_RNDN);
          mpfr_sub(e[j].get(), e[j].get(), tmp.get(), MPFR_RNDN);
          g = e[j];
          for (std::size_t k = 0; k <= j; ++k) {
            mpfr_mul(tmp.get(), f.get(), e[k].get(), MPFR_RNDN);
            mpfr_fma(tmp.get(), g.get(), A(i, k).get(), tmp.get(), MPFR_RNDN);
            mpfr_sub(A(j, k).get(), A(j, k).get(), tmp.get(), MPFR_RNDN);
          }
        }
      }
    } else {
      e[i] = A(i, l);
    }
    d[i] = h;
  }
  for (std::size_t i = 0; i < n; ++i) d[i] = A(i, i);

  for (std::size_t i = 1; i < n; ++i) e[i - 1] = e[i];
  mpfr_set_zero(e[n - 1].get(), 1);
  d = tridiagonal_eigenvalues(std::move(d), std::move(e), bits);
  for (auto& x : d) x = x.at_precision(m.precision());
  return d;
}

}  // namespace zetalab::hp
