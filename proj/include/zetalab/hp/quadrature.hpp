#pragma once

#include <functional>
#include <memory>
#include <vector>

#include "zetalab/error.hpp"
#include "zetalab/hp/complex.hpp"

namespace zetalab::hp {

// Nodes and weights of the n-point Gauss-Legendre rule on [-1, 1], accurate
// to the requested precision. Only the nonnegative half is stored; node i
// and -node i share weight i (a zero node appears once, with its weight).
struct GaussLegendreRule {
  int n = 0;
  Precision bits = 0;
  std::vector<Real> nodes;
  std::vector<Real> weights;
};

// Cached per (n, bits); safe to call concurrently.
std::shared_ptr<const GaussLegendreRule> gauss_legendre(int n, Precision bits);

// n-point Gauss-Legendre on [a, b]. T is Real or Complex.
template <typename T, typename F>
T integrate_gl(F&& f, const Real& a, const Real& b, int n) {
  const Precision bits = std::max(a.precision(), b.precision());
  const auto rule = gauss_legendre(n, bits);
  const Real half_len = (b - a) / 2L;
  const Real mid = (a + b) / 2L;
  T acc = T(Real::with_bits(bits));
  for (std::size_t i = 0; i < rule->nodes.size(); ++i) {
    const Real& x = rule->nodes[i];
    if (x.is_zero()) {
      acc += f(mid) * rule->weights[i];
    } else {
      const Real dx = half_len * x;
      acc += (f(mid + dx) + f(mid - dx)) * rule->weights[i];
    }
  }
  return acc * half_len;
}

// Composite Gauss-Legendre over consecutive breakpoints.
template <typename T, typename F>
T integrate_gl_pieces(F&& f, const std::vector<Real>& breaks, int n) {
  if (breaks.size() < 2) throw DomainError("integrate_gl_pieces: need at least two breakpoints");
  T acc = T(Real::with_bits(breaks.front().precision()));
  for (std::size_t i = 0; i + 1 < breaks.size(); ++i) acc += integrate_gl<T>(f, breaks[i], breaks[i + 1], n);
  return acc;
}

struct QuadratureResult {
  int levels = 0;
  long evaluations = 0;
  double error_estimate = 0;  // |I_level - I_{level-1}|
};

// Double-exponential (tanh-sinh) rule on [a, b], refined level by level until
// successive estimates agree to tol (absolute). Throws ConvergenceError after
// max_level refinements.
template <typename T, typename F>
T integrate_tanh_sinh(F&& f, const Real& a, const Real& b, const Real& tol, int max_level = 12,
                      QuadratureResult* info = nullptr) {
  const Precision bits = std::max(a.precision(), b.precision());
  PrecisionScope scope(bits);
  const Real half_len = (b - a) / 2L;
  const Real mid = (a + b) / 2L;
  const Real half_pi = pi(bits) / 2L;
  const Real tiny = epsilon(bits + 8);
  long evals = 0;

  // Contribution of abscissa t (and -t if t > 0) with unit step; returns false
  // once the weight has fallen below precision.
  auto sample = [&](const Real& t, T& acc) {
    const Real sh = sinh(t) * half_pi;
    const Real ch = cosh(t) * half_pi;
    const Real e = exp(sh * 2L);
    // 1 - tanh(sh) = 2 / (e + 1), computed without cancellation.
    const Real one_minus = Real(2) / (e + Real(1));
    const Real cosh_sh = cosh(sh);
    const Real w = ch / (cosh_sh * cosh_sh);
    if (w < tiny || one_minus.is_zero()) return false;
    const Real gap = half_len * one_minus;
    if (t.is_zero()) {
      acc += f(mid) * w;
      ++evals;
    } else {
      const Real lo = a + gap;
      const Real hi = b - gap;
      if (lo == a || hi == b) return false;
      acc += (f(lo) + f(hi)) * w;
      evals += 2;
    }
    return true;
  };

  Real h(1);
  T sum = T(Real::with_bits(bits));
  sample(Real(0), sum);
  for (long k = 1;; ++k) {
    if (!sample(Real(k), sum)) break;
  }
  T estimate = sum * h * half_len;
  double err = 0;
  for (int level = 1; level <= max_level; ++level) {
    h /= 2L;
    for (long k = 1;; k += 2) {
      if (!sample(h * k, sum)) break;
    }
    T next = sum * h * half_len;
    const Real diff = abs(next - estimate);
    err = diff.to_double();
    estimate = std::move(next);
    if (level >= 3 && diff < tol) {
      if (info) *info = {level, evals, err};
      return estimate;
    }
  }
  throw ConvergenceError("tanh-sinh quadrature did not reach tolerance " + tol.to_string(4) +
                         " (last difference " + std::to_string(err) + ")");
}

}  // namespace zetalab::hp
