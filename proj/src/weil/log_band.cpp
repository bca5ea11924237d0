#include "zetalab/weil/log_band.hpp"

#include <algorithm>
#include <map>

#include "zetalab/error.hpp"
#include "zetalab/hp/quadrature.hpp"

namespace zetalab::weil {

namespace {

Piece basis_piece(const Real& L, const std::vector<Complex>& coeffs) {
  const Precision bits = L.precision();
  const long K = static_cast<long>(coeffs.size() / 2);
  const Real norm = Real(1) / hp::sqrt(L * 2L);
  const Real pi = hp::pi(bits);
  Piece p{-L, L, {}};
  for (long k = -K; k <= K; ++k) {
    const Complex& c = coeffs[static_cast<std::size_t>(k + K)];
    if (c.is_zero()) continue;
    p.terms.push_back({c * norm, 0, pi * k / L});
  }
  return p;
}

Complex eval_terms(const std::vector<ExpTerm>& terms, const Real& t) {
  Complex acc = Complex::zero(t.precision());
  for (const auto& term : terms) {
    Complex v = term.coeff * Complex::polar(term.omega * t);
    for (int j = 0; j < term.power; ++j) v *= t;
    acc += v;
  }
  return acc;
}

// Merge terms with equal (power, omega) and drop exact zeros.
std::vector<ExpTerm> merge_terms(std::vector<ExpTerm> terms) {
  std::sort(terms.begin(), terms.end(), [](const ExpTerm& x, const ExpTerm& y) {
    if (x.power != y.power) return x.power < y.power;
    return x.omega < y.omega;
  });
  std::vector<ExpTerm> out;
  for (auto& t : terms) {
    if (!out.empty() && out.back().power == t.power && out.back().omega == t.omega) {
      out.back().coeff += t.coeff;
    } else {
      out.push_back(std::move(t));
    }
  }
  std::erase_if(out, [](const ExpTerm& t) { return t.coeff.is_zero(); });
  return out;
}

}  // namespace

Complex exp_moment(const Complex& beta, int j, const Real& a, const Real& b) {
  const Precision bits = std::max({beta.precision(), a.precision(), b.precision()});
  hp::PrecisionScope scope(bits);
  const Real reach = hp::max(hp::abs(a), hp::abs(b));
  const Real size = hp::abs(beta) * reach;
  if (size < Real(1)) {
    // Power series in beta; terms decay like size^m / m!.
    Complex acc = Complex::zero(bits);
    Complex bm(Real(1));
    const Real eps = hp::epsilon(bits + 8);
    Real an = hp::pow(a, static_cast<long>(j + 1));
    Real bn = hp::pow(b, static_cast<long>(j + 1));
    Real rn = hp::pow(reach, static_cast<long>(j + 1));
    const Real floor_ = hp::epsilon(4 * bits);
    for (long m = 0;; ++m) {
      acc += bm * ((bn - an) / static_cast<long>(m + j + 1));
      // Bound on this and all later terms; individual terms may vanish by symmetry.
      const Real bound = hp::abs(bm) * rn * 2L;
      if (m > 2 && bound <= eps * (hp::abs(acc) + floor_)) break;
      rn *= reach;
      if (m > 4 * bits) throw ConvergenceError("exp_moment: series did not converge");
      bm = bm * beta / static_cast<long>(m + 1);
      an *= a;
      bn *= b;
    }
    return acc;
  }
  const Complex ea = hp::exp(beta * Complex(a));
  const Complex eb = hp::exp(beta * Complex(b));
  Complex I = (eb - ea) / beta;
  Real ta(1), tb(1);
  for (int k = 1; k <= j; ++k) {
    ta *= a;
    tb *= b;
    I = (eb * tb - ea * ta - I * static_cast<long>(k)) / beta;
  }
  return I;
}

LogBandFunction::LogBandFunction(const Real& lambda, std::vector<Complex> coeffs)
    : lambda_(lambda), coeffs_(std::move(coeffs)) {
  if (!(lambda_ > Real(1))) throw DomainError("LogBandFunction: lambda must exceed 1");
  if (coeffs_.size() % 2 != 1) throw DomainError("LogBandFunction: coefficient count must be odd");
  hp::PrecisionScope scope(lambda_.precision());
  log_lambda_ = hp::log(lambda_);
  support_log_ = log_lambda_;
  for (auto& c : coeffs_) c = c.at_precision(lambda_.precision());
  Piece p = basis_piece(log_lambda_, coeffs_);
  if (!p.terms.empty()) pieces_.push_back(std::move(p));
}

LogBandFunction LogBandFunction::zero(const Real& lambda) { return LogBandFunction(lambda, {Complex(0)}); }

LogBandFunction LogBandFunction::basis(const Real& lambda, int k) {
  const int K = std::abs(k);
  std::vector<Complex> c(2 * K + 1, Complex::zero(lambda.precision()));
  c[static_cast<std::size_t>(k + K)] = Complex(Real(1));
  return LogBandFunction(lambda, std::move(c));
}

LogBandFunction LogBandFunction::from_function(const Real& lambda, int K,
                                               const std::function<Complex(const Real&)>& F, int pieces,
                                               int nodes) {
  if (K < 0 || pieces < 1 || nodes < 2) throw DomainError("from_function: bad discretization");
  const Precision bits = lambda.precision();
  hp::PrecisionScope scope(bits);
  const Real L = hp::log(lambda);
  const Real pi = hp::pi(bits);
  const Real w = pi / L;
  std::vector<Complex> acc(2 * K + 1, Complex::zero(bits));
  const auto rule = hp::gauss_legendre(nodes, bits);
  const Real h = L * 2L / static_cast<long>(pieces);
  // All coefficients at once: e^{-i k w t} by repeated multiplication.
  auto accumulate = [&](const Real& t, const Real& weight) {
    const Complex v = F(t) * weight;
    const Complex step = Complex::polar(-(w * t));
    Complex e(Real(1));
    acc[K] += v;
    Complex ep = e, em = e;
    const Complex stepc = hp::conj(step);
    for (int k = 1; k <= K; ++k) {
      ep *= step;
      em *= stepc;
      acc[K + k] += v * ep;
      acc[K - k] += v * em;
    }
  };
  for (int p = 0; p < pieces; ++p) {
    const Real a = -L + h * static_cast<long>(p);
    const Real mid = a + h / 2L;
    const Real half = h / 2L;
    for (std::size_t i = 0; i < rule->nodes.size(); ++i) {
      const Real wt = rule->weights[i] * half;
      if (rule->nodes[i].is_zero()) {
        accumulate(mid, wt);
      } else {
        const Real dx = half * rule->nodes[i];
        accumulate(mid + dx, wt);
        accumulate(mid - dx, wt);
      }
    }
  }
  const Real norm = Real(1) / hp::sqrt(L * 2L);
  for (auto& c : acc) c *= norm;
  return LogBandFunction(lambda, std::move(acc));
}

LogBandFunction LogBandFunction::from_pieces(const Real& lambda, const Real& support_log, std::vector<Piece> pieces) {
  LogBandFunction f;
  if (!(lambda > Real(1))) throw DomainError("LogBandFunction: lambda must exceed 1");
  hp::PrecisionScope scope(lambda.precision());
  f.lambda_ = lambda;
  f.log_lambda_ = hp::log(lambda);
  f.support_log_ = support_log;
  for (auto& p : pieces) {
    if (p.a > p.b) throw DomainError("LogBandFunction: piece with a > b");
    if (p.a < -support_log || p.b > support_log) throw DomainError("LogBandFunction: piece outside the support");
    p.terms = merge_terms(std::move(p.terms));
    if (p.a < p.b && !p.terms.empty()) f.pieces_.push_back(std::move(p));
  }
  return f;
}

std::vector<Real> LogBandFunction::breakpoints() const {
  std::vector<Real> out;
  for (const auto& p : pieces_) {
    out.push_back(p.a);
    out.push_back(p.b);
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

Real LogBandFunction::omega(int k) const { return hp::pi(precision()) * static_cast<long>(k) / log_lambda_; }

Complex LogBandFunction::at_log(const Real& t) const {
  const Precision bits = std::max(precision(), t.precision());
  hp::PrecisionScope scope(bits);
  Complex acc = Complex::zero(bits);
  if (has_coefficients() && t > -log_lambda_ && t < log_lambda_) {
    // sum_k c_k z^k with z = e^{i pi t / L}
    const long K = half_width();
    const Complex z = Complex::polar(hp::pi(bits) * t / log_lambda_);
    const Complex zc = hp::conj(z);
    acc = coeffs_[K];
    Complex zp(Real(1)), zm(Real(1));
    for (long k = 1; k <= K; ++k) {
      zp *= z;
      zm *= zc;
      acc += coeffs_[K + k] * zp + coeffs_[K - k] * zm;
    }
    return acc / hp::sqrt(log_lambda_ * 2L);
  }
  for (const auto& p : pieces_) {
    if (t < p.a || t > p.b) continue;
    Complex v = eval_terms(p.terms, t);
    if (t == p.a || t == p.b) v /= Real(2);
    acc += v;
  }
  return acc;
}

Complex LogBandFunction::mellin(const Complex& s) const {
  const Precision bits = std::max(precision(), s.precision());
  hp::PrecisionScope scope(bits);
  Complex acc = Complex::zero(bits);
  // beta = i omega - i s
  const Complex mis = Complex(s.im, -s.re);
  for (const auto& p : pieces_) {
    for (const auto& term : p.terms) {
      const Complex beta = mis + Complex(Real::with_bits(bits), term.omega);
      acc += term.coeff * exp_moment(beta, term.power, p.a, p.b);
    }
  }
  return acc;
}

Real LogBandFunction::norm_squared() const {
  if (has_coefficients()) {
    Real acc = Real::with_bits(precision());
    for (const auto& c : coeffs_) acc += hp::norm(c);
    return acc;
  }
  auto br = breakpoints();
  if (br.size() < 2) return Real::with_bits(precision());
  const int n = static_cast<int>(precision() / 4 + 24);
  return hp::integrate_gl_pieces<Real>([&](const Real& t) { return hp::norm(at_log(t)); }, br, n);
}

LogBandFunction raised_cosine(const Real& lambda, int power, int m, bool odd) {
  if (power < 0 || m < 0) throw DomainError("raised_cosine: power and m must be nonnegative");
  if (odd && m == 0) throw DomainError("raised_cosine: sin(0) vanishes");
  const Precision bits = lambda.precision();
  hp::PrecisionScope scope(bits);
  const Real root = hp::sqrt(hp::log(lambda) * 2L);  // psi_k = e^{ikx} / root
  const int K = m + power;
  std::vector<Complex> c(2 * K + 1, Complex::zero(bits));
  std::vector<Real> binom(2 * power + 1);
  binom[0] = Real(1);
  for (int i = 1; i <= 2 * power; ++i) binom[i] = binom[i - 1] * static_cast<long>(2 * power - i + 1) / static_cast<long>(i);
  const Real scale = root / hp::pow(Real(2), Real(power));
  // cos(mx) = (e^{imx} + e^{-imx}) / 2, sin(mx) = (e^{imx} - e^{-imx}) / 2i.
  for (int sign : {1, -1}) {
    if (m == 0 && sign == -1) break;
    const Real half = m == 0 ? Real(1) : Real(0.5);
    const Complex phase = odd ? Complex(Real::with_bits(bits), Real(-sign)) : Complex(Real(1));
    for (int j = -power; j <= power; ++j) c[K + j + sign * m] += phase * Complex(scale * half * binom[power + j]);
  }
  return LogBandFunction(lambda, std::move(c));
}

LogBandFunction star_convolve(const LogBandFunction& f, const LogBandFunction& g) {
  if (!(f.lambda() == g.lambda())) throw DomainError("star_convolve: functions must share lambda");
  const Precision bits = std::max(f.precision(), g.precision());
  hp::PrecisionScope scope(bits);
  std::vector<Piece> out;
  // Contribution of c e^{i w t} on [a, b] against d e^{i v s} on [p, q]:
  //   H(t) = c conj(d) e^{i w t} int_{lo(t)}^{hi(t)} e^{i (w - v) sigma} d sigma,
  //   lo = max(p, a - t), hi = min(q, b - t).
  for (const auto& P : f.pieces())
    for (const auto& Q : g.pieces()) {
      const Real& a = P.a;
      const Real& b = P.b;
      const Real& p = Q.a;
      const Real& q = Q.b;
      const Real t1 = a - q, t4 = b - p;
      const Real u1 = a - p, u2 = b - q;  // lo switches at u1, hi at u2
      std::vector<Real> cuts{t1, hp::min(u1, u2), hp::max(u1, u2), t4};
      for (std::size_t seg = 0; seg + 1 < cuts.size(); ++seg) {
        const Real& s0 = cuts[seg];
        const Real& s1 = cuts[seg + 1];
        if (!(s0 < s1)) continue;
        const Real mid = (s0 + s1) / 2L;
        const bool lo_moves = mid < u1;  // lo = a - t
        const bool hi_moves = mid > u2;  // hi = b - t
        Piece piece{s0, s1, {}};
        for (const auto& x : P.terms) {
          if (x.power != 0) throw DomainError("star_convolve: terms must have power 0");
          for (const auto& y : Q.terms) {
            if (y.power != 0) throw DomainError("star_convolve: terms must have power 0");
            const Complex cd = x.coeff * hp::conj(y.coeff);
            const Real delta = x.omega - y.omega;
            if (delta.is_zero()) {
              // (hi - lo) e^{i w t}, with hi - lo affine in t.
              Real c0 = (hi_moves ? b : q) - (lo_moves ? a : p);
              long c1 = (hi_moves ? -1 : 0) + (lo_moves ? 1 : 0);
              piece.terms.push_back({cd * c0, 0, x.omega});
              if (c1 != 0) piece.terms.push_back({cd * Real(c1), 1, x.omega});
              continue;
            }
            // (e^{i delta hi} - e^{i delta lo}) / (i delta) e^{i w t}
            const Complex inv = Complex(Real::with_bits(bits), -(Real(1) / delta));  // 1 / (i delta)
            const Complex k = cd * inv;
            if (hi_moves) {
              // e^{i delta (b - t)} e^{i w t} = e^{i delta b} e^{i v t}
              piece.terms.push_back({k * Complex::polar(delta * b), 0, y.omega});
            } else {
              piece.terms.push_back({k * Complex::polar(delta * q), 0, x.omega});
            }
            if (lo_moves) {
              piece.terms.push_back({-(k * Complex::polar(delta * a)), 0, y.omega});
            } else {
              piece.terms.push_back({-(k * Complex::polar(delta * p)), 0, x.omega});
            }
          }
        }
        out.push_back(std::move(piece));
      }
    }
  // Merge pieces over the common refinement of all cuts.
  std::vector<Real> cuts;
  for (const auto& p : out) {
    cuts.push_back(p.a);
    cuts.push_back(p.b);
  }
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
  std::vector<Piece> merged;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    Piece m{cuts[i], cuts[i + 1], {}};
    for (const auto& p : out)
      if (p.a <= m.a && m.b <= p.b) m.terms.insert(m.terms.end(), p.terms.begin(), p.terms.end());
    merged.push_back(std::move(m));
  }
  return LogBandFunction::from_pieces(f.lambda(), f.support_log() + g.support_log(), std::move(merged));
}

}  // namespace zetalab::weil
