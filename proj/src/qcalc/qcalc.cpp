#include "zetalab/qcalc.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>
#include <sstream>

#include "zetalab/error.hpp"
#include "zetalab/hp/quadrature.hpp"
#include "zetalab/weil/explicit.hpp"

namespace zetalab::qcalc {

using hp::Complex;
using hp::Real;

namespace {

constexpr Scalar kPi = std::numbers::pi_v<Scalar>;

std::vector<Scalar> parse_list(const std::string& text) {
  std::vector<Scalar> out;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    std::size_t used = 0;
    try {
      out.push_back(std::stold(item, &used));
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || used != item.size()) throw ParseError("function: bad number '" + item + "'");
  }
  return out;
}

}  // namespace

SmoothFunction exp_function() {
  auto e = [](Scalar x) { return std::exp(x); };
  return {"exp", e, e, e, e};
}

SmoothFunction sin_function() {
  return {"sin", [](Scalar x) { return std::sin(x); }, [](Scalar x) { return std::cos(x); },
          [](Scalar x) { return -std::sin(x); }, [](Scalar x) { return -std::cos(x); }};
}

SmoothFunction polynomial(std::vector<Scalar> coeffs) {
  auto derivative = [](const std::vector<Scalar>& c) {
    std::vector<Scalar> d;
    for (std::size_t k = 1; k < c.size(); ++k) d.push_back(c[k] * static_cast<Scalar>(k));
    return d;
  };
  auto horner = [](std::vector<Scalar> c) {
    return [c = std::move(c)](Scalar x) {
      Scalar acc = 0;
      for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * x + *it;
      return acc;
    };
  };
  const auto c1 = derivative(coeffs), c2 = derivative(c1), c3 = derivative(c2);
  return {"poly", horner(coeffs), horner(c1), horner(c2), horner(c3)};
}

SmoothFunction mobius(Scalar a, Scalar b, Scalar c, Scalar d) {
  const Scalar det = a * d - b * c;
  if (det == 0) throw DomainError("mobius: ad - bc = 0");
  // f = a/c - det / (c (c x + d)) for c != 0; derivatives of (c x + d)^{-1}.
  return {"mobius", [=](Scalar x) { return (a * x + b) / (c * x + d); },
          [=](Scalar x) { return det / ((c * x + d) * (c * x + d)); },
          [=](Scalar x) { return -2 * c * det / std::pow(c * x + d, 3); },
          [=](Scalar x) { return 6 * c * c * det / std::pow(c * x + d, 4); }};
}

SmoothFunction compose(const SmoothFunction& g, const SmoothFunction& f) {
  SmoothFunction h;
  h.name = g.name + "(" + f.name + ")";
  h.f = [g, f](Scalar x) { return g.f(f.f(x)); };
  h.d1 = [g, f](Scalar x) { return g.d1(f.f(x)) * f.d1(x); };
  h.d2 = [g, f](Scalar x) {
    const Scalar y = f.f(x), p = f.d1(x);
    return g.d2(y) * p * p + g.d1(y) * f.d2(x);
  };
  h.d3 = [g, f](Scalar x) {
    const Scalar y = f.f(x), p = f.d1(x), q = f.d2(x);
    return g.d3(y) * p * p * p + 3 * g.d2(y) * p * q + g.d1(y) * f.d3(x);
  };
  return h;
}

SmoothFunction parse_function(const std::string& spec) {
  if (spec == "exp") return exp_function();
  if (spec == "sin") return sin_function();
  if (spec == "cubic") {
    auto f = polynomial({0, 1, 0, 1});
    f.name = "cubic";
    return f;
  }
  if (spec == "mobius") return mobius(2, 1, 1, 3);
  if (spec.rfind("mobius:", 0) == 0) {
    const auto v = parse_list(spec.substr(7));
    if (v.size() != 4) throw ParseError("function: mobius needs four coefficients");
    return mobius(v[0], v[1], v[2], v[3]);
  }
  if (spec.rfind("poly:", 0) == 0) {
    const auto v = parse_list(spec.substr(5));
    if (v.empty()) throw ParseError("function: empty polynomial");
    return polynomial(v);
  }
  throw ParseError("function: unknown '" + spec + "'");
}

KernelGrid KernelGrid::sample(const std::function<Cx(Scalar, Scalar)>& kernel, std::vector<Scalar> x, int guard) {
  for (std::size_t i = 1; i < x.size(); ++i)
    if (!(x[i] > x[i - 1])) throw DomainError("KernelGrid: grid must be strictly increasing");
  if (guard < 0) throw DomainError("KernelGrid: negative guard band");
  KernelGrid g;
  g.guard = guard;
  g.values.resize(x.size() * x.size());
  for (std::size_t i = 0; i < x.size(); ++i)
    for (std::size_t j = 0; j < x.size(); ++j) g.values[i * x.size() + j] = kernel(x[i], x[j]);
  g.x = std::move(x);
  return g;
}

std::vector<OmegaSample> omega(const KernelGrid& grid) {
  const std::size_t n = grid.x.size();
  std::vector<OmegaSample> out;
  if (n < 3) return out;
  for (std::size_t i = 1; i + 1 < n; ++i)
    for (std::size_t j = 1; j + 1 < n; ++j) {
      const long gap = std::labs(static_cast<long>(i) - static_cast<long>(j));
      if (gap <= grid.guard) continue;
      const Cx &pp = grid.at(i + 1, j + 1), &mm = grid.at(i - 1, j - 1);
      const Cx &pm = grid.at(i + 1, j - 1), &mp = grid.at(i - 1, j + 1);
      for (const Cx* v : {&pp, &mm, &pm, &mp})
        if (*v == Cx(0)) throw DomainError("omega: kernel vanishes on the grid");
      const Cx ratio = (pp * mm) / (pm * mp);
      if (!(ratio.real() > 0)) throw DomainError("omega: kernel changes sign inside a stencil");
      const Scalar area = (grid.x[i + 1] - grid.x[i - 1]) * (grid.x[j + 1] - grid.x[j - 1]);
      out.push_back({i, j, grid.x[i], grid.x[j], std::log(ratio) / area});
    }
  return out;
}

Cx quantized_diff_kernel(const SmoothFunction& f, Scalar x, Scalar y) {
  const Cx c(0, 1 / kPi);
  const Scalar d = y - x;
  // Below this gap the difference quotient loses more digits than the
  // cubic Taylor remainder costs.
  const Scalar tiny = 1e-6L * (1 + std::fabs(x));
  if (std::fabs(d) <= tiny) return c * (f.d1(x) + f.d2(x) * d / 2 + f.d3(x) * d * d / 6);
  return c * ((f.f(x) - f.f(y)) / (x - y));
}

SchwarzianResult schwarzian(const SmoothFunction& f, Scalar x, Scalar h) {
  const Scalar p = f.d1(x);
  const Scalar slack = 64 * std::numeric_limits<Scalar>::epsilon() * (1 + std::fabs(f.d2(x)));
  if (std::fabs(p) <= slack) throw DomainError("schwarzian: f'(x) = 0");
  if (!(h > 0)) throw DomainError("schwarzian: step must be positive");
  if (!(f.d1(x - h) * p > 0) || !(f.d1(x + h) * p > 0))
    throw DomainError("schwarzian: f' changes sign inside the stencil");
  SchwarzianResult r;
  const Scalar q = f.d2(x) / p;
  r.value = f.d3(x) / p - Scalar(1.5) * q * q;
  // The stencil of omega at (x, x): two diagonal samples and the symmetric
  // off-diagonal pair k(x + s, x - s) = k(x - s, x + s).
  auto diag = [&](Scalar s) {
    const Cx ratio = quantized_diff_kernel(f, x + s, x + s) * quantized_diff_kernel(f, x - s, x - s) /
                     (quantized_diff_kernel(f, x + s, x - s) * quantized_diff_kernel(f, x - s, x + s));
    if (!(ratio.real() > 0) || !std::isfinite(ratio.real()))
      throw DomainError("schwarzian: f' changes sign inside the stencil");
    return std::log(ratio).real() / (4 * s * s);
  };
  r.step = h;
  r.omega_diag = diag(h);
  r.omega_half = diag(h / 2);
  r.ratio = r.value == 0 ? std::numeric_limits<Scalar>::quiet_NaN() : 6 * r.omega_diag / r.value;
  return r;
}

BlockOperator::BlockOperator(Eigen::MatrixXcd m, std::vector<bool> p, std::vector<long> lab)
    : matrix(std::move(m)), in_p(std::move(p)), labels(std::move(lab)) {
  if (matrix.rows() != matrix.cols()) throw DomainError("BlockOperator: matrix must be square");
  if (static_cast<Eigen::Index>(in_p.size()) != matrix.rows())
    throw DomainError("BlockOperator: projection size mismatch");
  if (labels.empty())
    for (Eigen::Index i = 0; i < matrix.rows(); ++i) labels.push_back(i);
  if (static_cast<Eigen::Index>(labels.size()) != matrix.rows())
    throw DomainError("BlockOperator: label count mismatch");
}

std::vector<int> BlockOperator::p_indices() const {
  std::vector<int> out;
  for (std::size_t i = 0; i < in_p.size(); ++i)
    if (in_p[i]) out.push_back(static_cast<int>(i));
  return out;
}

std::vector<int> BlockOperator::q_indices() const {
  std::vector<int> out;
  for (std::size_t i = 0; i < in_p.size(); ++i)
    if (!in_p[i]) out.push_back(static_cast<int>(i));
  return out;
}

Eigen::MatrixXcd BlockOperator::block(int row_block, int col_block) const {
  const auto rows = row_block == 2 ? p_indices() : q_indices();
  const auto cols = col_block == 2 ? p_indices() : q_indices();
  return matrix(rows, cols);
}

BlockOperator identity_model(int n, const std::vector<bool>& p) {
  return BlockOperator(Eigen::MatrixXcd::Identity(n, n), p);
}

BlockOperator shift_adjoint_model(int N, int k) {
  if (N < 1 || k < 0 || k > N) throw DomainError("shift_adjoint_model: need N >= 1 and 0 <= k <= N");
  const int n = 2 * N + 1;
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(n, n);
  std::vector<bool> p(n);
  std::vector<long> labels(n);
  for (int i = 0; i < n; ++i) {
    labels[i] = i - N;
    p[i] = labels[i] >= 0;
    if (i - k >= 0) m(i - k, i) = 1;
  }
  return BlockOperator(std::move(m), std::move(p), std::move(labels));
}

BlockOperator random_unitary_model(int n, std::uint64_t seed) {
  if (n < 2) throw DomainError("random_unitary_model: need n >= 2");
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss;
  Eigen::MatrixXcd z(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) z(i, j) = {gauss(rng), gauss(rng)};
  Eigen::HouseholderQR<Eigen::MatrixXcd> qr(z);
  Eigen::MatrixXcd q = qr.householderQ();
  // Fix the phases of R's diagonal so that the distribution is Haar.
  for (int j = 0; j < n; ++j) {
    const auto r = qr.matrixQR()(j, j);
    if (std::abs(r) > 0) q.col(j) *= r / std::abs(r);
  }
  std::vector<bool> p(n);
  for (int i = 0; i < n; ++i) p[i] = i >= n - n / 2;
  return BlockOperator(std::move(q), std::move(p));
}

namespace {

// Labels of the rows of `defect` (indexed by `index`) whose norm exceeds tol.
ConditionStatus status_of(const Eigen::MatrixXcd& defect, const std::vector<int>& index,
                          const std::vector<long>& labels, double tol) {
  ConditionStatus s;
  s.residual = defect.size() == 0 ? 0.0 : defect.cwiseAbs().maxCoeff();
  for (Eigen::Index i = 0; i < defect.rows(); ++i)
    if (defect.row(i).cwiseAbs().maxCoeff() > tol || defect.col(i).cwiseAbs().maxCoeff() > tol)
      s.defects.push_back(labels[index[i]]);
  s.holds = s.defects.empty();
  return s;
}

// Orthonormal basis of ker A by SVD; columns of the returned matrix.
Eigen::MatrixXcd kernel_basis(const Eigen::MatrixXcd& a, double tol) {
  if (a.cols() == 0) return Eigen::MatrixXcd(0, 0);
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(a, Eigen::ComputeFullV);
  const auto& sv = svd.singularValues();
  Eigen::Index rank = 0;
  for (Eigen::Index i = 0; i < sv.size(); ++i)
    if (sv[i] > tol) ++rank;
  return svd.matrixV().rightCols(a.cols() - rank);
}

}  // namespace

bool TriangularReport::exact_on(long lo, long hi) const {
  for (const auto* c : {&u11_isometry, &u22_coisometry, &u12_partial_isometry})
    for (long l : c->defects)
      if (l >= lo && l <= hi) return false;
  return true;
}

TriangularReport triangular_unitary_check(const BlockOperator& u, double tol) {
  TriangularReport r;
  const auto P = u.p_indices(), Q = u.q_indices();
  const auto U11 = u.block(1, 1), U12 = u.block(1, 2), U21 = u.block(2, 1), U22 = u.block(2, 2);
  r.u21_norm = U21.size() == 0 ? 0.0 : U21.cwiseAbs().maxCoeff();
  r.u21_zero = r.u21_norm <= tol;

  const Eigen::MatrixXcd I1 = Eigen::MatrixXcd::Identity(Q.size(), Q.size());
  const Eigen::MatrixXcd I2 = Eigen::MatrixXcd::Identity(P.size(), P.size());
  r.u11_isometry = status_of(U11.adjoint() * U11 - I1, Q, u.labels, tol);
  r.u22_coisometry = status_of(U22 * U22.adjoint() - I2, P, u.labels, tol);

  // U12 restricted to ker U22 must be an isometry onto coker U11, and vanish
  // on the orthogonal complement of ker U22.
  const Eigen::MatrixXcd K = kernel_basis(U22, tol);
  r.ker_u22 = static_cast<std::size_t>(K.cols());
  const Eigen::MatrixXcd S = K * K.adjoint();
  const Eigen::MatrixXcd V = U12 * S;
  const Eigen::MatrixXcd initial = V.adjoint() * V - S;
  const Eigen::MatrixXcd final_ = V * V.adjoint() - (I1 - U11 * U11.adjoint());
  const Eigen::MatrixXcd off = U12 * (I2 - S);
  const auto a = status_of(initial, P, u.labels, tol);
  const auto b = status_of(final_, Q, u.labels, tol);
  const auto c = status_of(off.adjoint() * off, P, u.labels, tol);
  r.u12_partial_isometry.residual = std::max({a.residual, b.residual, c.residual});
  for (const auto* s : {&a, &b, &c})
    r.u12_partial_isometry.defects.insert(r.u12_partial_isometry.defects.end(), s->defects.begin(),
                                          s->defects.end());
  auto& d = r.u12_partial_isometry.defects;
  std::sort(d.begin(), d.end());
  d.erase(std::unique(d.begin(), d.end()), d.end());
  r.u12_partial_isometry.holds = d.empty();

  std::vector<int> all(u.size());
  for (Eigen::Index i = 0; i < u.size(); ++i) all[i] = static_cast<int>(i);
  const Eigen::MatrixXcd I = Eigen::MatrixXcd::Identity(u.size(), u.size());
  const Eigen::MatrixXcd both = (u.matrix.adjoint() * u.matrix - I).cwiseAbs().cast<std::complex<double>>() +
                                (u.matrix * u.matrix.adjoint() - I).cwiseAbs().cast<std::complex<double>>();
  r.unitary = status_of(both, all, u.labels, tol);

  const bool conditions = r.u11_isometry.holds && r.u22_coisometry.holds && r.u12_partial_isometry.holds;
  r.consistent = !r.u21_zero || conditions == r.unitary.holds;
  return r;
}

MainLemmaResult main_lemma_check(const BlockOperator& u, const std::vector<double>& f, double tol) {
  if (static_cast<Eigen::Index>(f.size()) != u.size()) throw DomainError("main_lemma_check: f has the wrong size");
  for (double v : f)
    if (!(v >= 0)) throw DomainError("main_lemma_check: f must be nonnegative");
  const auto report = triangular_unitary_check(u, tol);
  if (!report.u21_zero) throw DomainError("main_lemma_check: U is not upper triangular");
  for (const auto* c : {&report.u11_isometry, &report.u22_coisometry, &report.u12_partial_isometry})
    for (long label : c->defects) {
      const auto it = std::find(u.labels.begin(), u.labels.end(), label);
      if (f[it - u.labels.begin()] != 0)
        throw DomainError("main_lemma_check: f touches the truncation boundary at site " + std::to_string(label));
    }

  MainLemmaResult r;
  const Eigen::Index n = u.size();
  Eigen::VectorXcd pdiag(n);
  for (Eigen::Index i = 0; i < n; ++i) pdiag[i] = u.in_p[i] ? 1.0 : 0.0;
  // -(1/2) U* [F, U] = -(U* P U - P) with F = 2P - 1.
  const Eigen::MatrixXcd commutator = u.matrix.adjoint() * pdiag.asDiagonal() * u.matrix;
  for (Eigen::Index i = 0; i < n; ++i) r.lhs -= f[i] * (commutator(i, i).real() - pdiag[i].real());

  const auto P = u.p_indices();
  const Eigen::MatrixXcd K = kernel_basis(u.block(2, 2), tol);
  r.kernel_dim = static_cast<std::size_t>(K.cols());
  const Eigen::MatrixXcd S = K * K.adjoint();
  for (std::size_t a = 0; a < P.size(); ++a) r.rhs += f[P[a]] * S(a, a).real();
  return r;
}

weil::LogBandFunction project_sonin_constraints(const weil::LogBandFunction& g) {
  if (!g.has_coefficients()) throw DomainError("project_sonin_constraints: g needs basis coefficients");
  if (g.is_zero()) return g;
  const hp::Precision bits = g.precision();
  hp::PrecisionScope scope(bits);
  const int K = g.half_width();
  auto c = g.coefficients();
  const Complex zero = Complex::zero(bits);
  const std::vector<Complex> points{zero, Complex(Real::with_bits(bits), Real(0.5))};
  // The functional c -> g^(z) is <conj(a), c> with a_k = psi_k^(z).
  std::vector<std::vector<Complex>> dirs;
  for (const auto& z : points) {
    std::vector<Complex> v(2 * K + 1);
    for (int k = -K; k <= K; ++k) v[k + K] = hp::conj(weil::LogBandFunction::basis(g.lambda(), k).mellin(z));
    for (const auto& w : dirs) {
      Complex dot = zero;
      for (int i = 0; i <= 2 * K; ++i) dot += hp::conj(w[i]) * v[i];
      for (int i = 0; i <= 2 * K; ++i) v[i] -= w[i] * dot;
    }
    Real norm = Real::with_bits(bits);
    for (const auto& x : v) norm += hp::norm(x);
    norm = hp::sqrt(norm);
    if (norm.is_zero()) continue;
    for (auto& x : v) x = x / Complex(norm);
    dirs.push_back(std::move(v));
  }
  for (const auto& w : dirs) {
    Complex dot = zero;
    for (int i = 0; i <= 2 * K; ++i) dot += hp::conj(w[i]) * c[i];
    for (int i = 0; i <= 2 * K; ++i) c[i] -= w[i] * dot;
  }
  return weil::LogBandFunction(g.lambda(), std::move(c));
}

namespace {

struct Rule {
  std::vector<double> x, w;
};

// Composite Gauss-Legendre on [a, b] with `panels` panels of n points.
Rule composite_gl(double a, double b, int panels, int n) {
  const auto base = hp::gauss_legendre(n, 64);
  std::vector<double> nodes, weights;
  for (std::size_t i = 0; i < base->nodes.size(); ++i) {
    const double x = base->nodes[i].to_double(), w = base->weights[i].to_double();
    nodes.push_back(x);
    weights.push_back(w);
    if (x != 0) {
      nodes.push_back(-x);
      weights.push_back(w);
    }
  }
  Rule r;
  const double len = (b - a) / panels;
  for (int p = 0; p < panels; ++p) {
    const double mid = a + (p + 0.5) * len;
    for (std::size_t i = 0; i < nodes.size(); ++i) {
      r.x.push_back(mid + nodes[i] * len / 2);
      r.w.push_back(weights[i] * len / 2);
    }
  }
  return r;
}

// Even Hermite functions h_0, h_2, .., h_{2(m-1)} at x, in the normalization
// F h_n = (-i)^n h_n for F f(y) = int f(x) e^{-2 pi i x y} dx.
void even_hermite(int m, double x, double* out) {
  const double xi = std::sqrt(2 * std::numbers::pi) * x;
  const double scale = std::pow(2 * std::numbers::pi, 0.25);
  double prev = 0, cur = std::pow(std::numbers::pi, -0.25) * std::exp(-xi * xi / 2);
  for (int n = 0;; ++n) {
    if (n % 2 == 0) out[n / 2] = scale * cur;
    if (n == 2 * m - 2) break;
    const double next = std::sqrt(2.0 / (n + 1)) * xi * cur - std::sqrt(double(n) / (n + 1)) * prev;
    prev = cur;
    cur = next;
  }
}

}  // namespace

weil::LogBandFunction random_sonin_test_function(std::uint64_t seed, int modes, hp::Precision bits) {
  if (modes < 2) throw DomainError("random_sonin_test_function: need modes >= 2");
  hp::PrecisionScope scope(bits);
  const Real lambda = hp::sqrt(Real(2));
  const int K = modes + 4;
  std::vector<std::vector<Complex>> span;
  for (int m = 0; m <= modes; ++m)
    for (int odd = 0; odd <= (m > 0 ? 1 : 0); ++odd) {
      const auto b = weil::raised_cosine(lambda, 4, m, odd == 1);
      // Pad to the common band |k| <= K.
      std::vector<Complex> c(2 * K + 1, Complex::zero(bits));
      const int Kb = b.half_width();
      for (int k = -Kb; k <= Kb; ++k) c[K + k] = b.coefficients()[Kb + k];
      span.push_back(std::move(c));
    }
  const std::size_t n = span.size();
  // Both functionals are real on this span of real functions.
  std::vector<std::vector<Real>> rows(2, std::vector<Real>(n));
  const Complex zero = Complex::zero(bits), half(Real::with_bits(bits), Real(0.5));
  for (std::size_t i = 0; i < n; ++i) {
    const weil::LogBandFunction b(lambda, span[i]);
    rows[0][i] = b.mellin(zero).re;
    rows[1][i] = b.mellin(half).re;
  }
  for (auto& r : rows) {
    if (&r == &rows[1]) {
      Real dot = Real::with_bits(bits);
      for (std::size_t i = 0; i < n; ++i) dot += rows[0][i] * r[i];
      for (std::size_t i = 0; i < n; ++i) r[i] -= rows[0][i] * dot;
    }
    Real nn = Real::with_bits(bits);
    for (const auto& x : r) nn += x * x;
    nn = hp::sqrt(nn);
    for (auto& x : r) x /= nn;
  }
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss;
  std::vector<Real> a(n);
  for (auto& x : a) x = Real(gauss(rng));
  for (const auto& r : rows) {
    Real dot = Real::with_bits(bits);
    for (std::size_t i = 0; i < n; ++i) dot += r[i] * a[i];
    for (std::size_t i = 0; i < n; ++i) a[i] -= r[i] * dot;
  }
  std::vector<Complex> c(2 * K + 1, Complex::zero(bits));
  for (std::size_t i = 0; i < n; ++i)
    for (int k = 0; k <= 2 * K; ++k) c[k] += span[i][k] * Complex(a[i]);
  return weil::LogBandFunction(lambda, std::move(c));
}

Eigen::MatrixXcd theta_gram(const weil::LogBandFunction& g, int hermite_count) {
  const int M = hermite_count;
  if (M < 1) throw DomainError("theta_gram: need a nonempty frame");
  if (g.is_zero()) return Eigen::MatrixXcd::Zero(M, M);
  hp::PrecisionScope scope(g.precision());
  const double T = g.support_log().to_double();
  const double lmax = std::exp(T);
  // h_n(x) is below 1e-14 once sqrt(2 pi) |x| passes sqrt(2n + 1) + 8.
  const double root2pi = std::sqrt(2 * std::numbers::pi);
  const double xi_max = std::sqrt(4.0 * M) + 8;
  const double xmax = xi_max / root2pi * lmax;
  // Phase rates of h_{2M}(v x): in x at most sqrt(4M) sqrt(2 pi) v, in t = log v
  // at most (4M + 1) / 2.
  const double wave = std::sqrt(4.0 * M) * root2pi;
  const double t_rate = (4.0 * M + 1) / 2;

  // Phi_b(x) = (theta(g)^* h_2b)(x) = int conj g(v) v^{1/2} h_2b(v x) d*v.
  const Rule xs = composite_gl(0, xmax, int(std::ceil(xmax * wave * lmax / 8)) + 4, 16);
  std::vector<Real> breaks;
  for (const auto& b : g.breakpoints()) breaks.push_back(b);
  std::vector<double> tx, tw;
  for (std::size_t i = 0; i + 1 < breaks.size(); ++i) {
    const double a = breaks[i].to_double(), b = breaks[i + 1].to_double();
    const Rule piece = composite_gl(a, b, int(std::ceil((b - a) * t_rate / 8)) + 2, 16);
    tx.insert(tx.end(), piece.x.begin(), piece.x.end());
    tw.insert(tw.end(), piece.w.begin(), piece.w.end());
  }
  std::vector<std::complex<double>> gw(tx.size());
  for (std::size_t l = 0; l < tx.size(); ++l) {
    const Complex v = g.at_log(Real(tx[l]));
    gw[l] = std::conj(std::complex<double>(v.re.to_double(), v.im.to_double())) * std::exp(tx[l] / 2) * tw[l];
  }
  Eigen::MatrixXcd Phi = Eigen::MatrixXcd::Zero(xs.x.size(), M);
  std::vector<double> buf(M);
  for (std::size_t q = 0; q < xs.x.size(); ++q)
    for (std::size_t l = 0; l < tx.size(); ++l) {
      const double arg = std::exp(tx[l]) * xs.x[q];
      if (arg * root2pi > xi_max) continue;
      even_hermite(M, arg, buf.data());
      for (int b = 0; b < M; ++b) Phi(q, b) += gw[l] * buf[b];
    }
  Eigen::VectorXd wx = Eigen::Map<const Eigen::VectorXd>(xs.w.data(), xs.w.size());
  return 2.0 * Phi.adjoint() * wx.asDiagonal() * Phi;
}

SoninResult sonin_positivity_check(const weil::LogBandFunction& g, const SoninOptions& opt) {
  if (!(opt.cutoff > 0) || !(opt.epsilon > 0 && opt.epsilon < 1) || opt.hermite_count < 4)
    throw DomainError("sonin_positivity_check: bad options");
  SoninResult r;
  r.epsilon = opt.epsilon;
  if (!g.has_coefficients()) throw DomainError("sonin_positivity_check: g needs basis coefficients");
  const hp::Precision bits = g.precision();
  hp::PrecisionScope scope(bits);
  const Real half_log2 = hp::log(Real(2)) / 2L;
  if (g.support_log() > half_log2 + hp::epsilon(bits - 16))
    throw DomainError("sonin_positivity_check: support exceeds [2^-1/2, 2^1/2]");
  r.projected = project_sonin_constraints(g);
  if (g.is_zero()) return r;
  Real mass = Real::with_bits(bits), input = Real::with_bits(bits);
  for (const auto& c : r.projected.coefficients()) mass += hp::norm(c);
  for (const auto& c : g.coefficients()) input += hp::norm(c);
  if (mass <= input * hp::epsilon(bits / 2)) throw DomainError("sonin_positivity_check: constraint projection annihilates g");

  const auto h = weil::star_convolve(r.projected, r.projected);
  r.w_side = -weil::w_arch(h).re.to_double();

  // Hermite frame and the compressed operator whose top eigenspace
  // approximates Sonin's space.
  const int M = opt.hermite_count;
  const double wave = std::sqrt(4.0 * M) * std::sqrt(2 * std::numbers::pi);
  const Rule inner = composite_gl(0, opt.cutoff, std::max(4, int(std::ceil(opt.cutoff * wave / 6))), 16);
  Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor> H(inner.x.size(), M);
  for (std::size_t q = 0; q < inner.x.size(); ++q) even_hermite(M, inner.x[q], &H(q, 0));
  Eigen::VectorXd w = Eigen::Map<const Eigen::VectorXd>(inner.w.data(), inner.w.size());
  const Eigen::MatrixXd P1 = 2 * H.transpose() * w.asDiagonal() * H;
  Eigen::VectorXd sign(M);
  for (int m = 0; m < M; ++m) sign[m] = m % 2 == 0 ? 1 : -1;
  const Eigen::MatrixXd P1hat = sign.asDiagonal() * P1 * sign.asDiagonal();
  const Eigen::MatrixXd I = Eigen::MatrixXd::Identity(M, M);
  const Eigen::MatrixXd A = (I - P1) * (I - P1hat) * (I - P1);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(0.5 * (A + A.transpose()));
  std::vector<int> keep;
  for (int i = 0; i < M; ++i)
    if (eig.eigenvalues()[i] > 1 - opt.epsilon) keep.push_back(i);
  r.sonin_rank = keep.size();
  if (keep.empty()) return r;
  const Eigen::MatrixXd V = eig.eigenvectors()(Eigen::all, keep);

  const Eigen::MatrixXcd Tm = theta_gram(r.projected, M);
  const Eigen::MatrixXcd Vc = V.cast<std::complex<double>>();
  r.trace_side = (Vc.adjoint() * Tm * Vc).trace().real();
  r.margin = r.w_side - r.trace_side;
  return r;
}

}  // namespace zetalab::qcalc
