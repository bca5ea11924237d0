#include "zetalab/hp/quadrature.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <utility>

namespace zetalab::hp {

namespace {

std::mutex g_rule_mutex;
std::map<std::pair<int, Precision>, std::shared_ptr<const GaussLegendreRule>> g_rules;

// P_n(x) and P_n'(x) by the three-term recurrence.
template <typename T>
std::pair<T, T> legendre(int n, const T& x) {
  T p0 = T(1);
  T p1 = x;
  for (int k = 2; k <= n; ++k) {
    T p2 = ((2 * k - 1) * x * p1 - (k - 1) * p0) / k;
    p0 = std::move(p1);
    p1 = std::move(p2);
  }
  const T dp = n * (x * p1 - p0) / (x * x - T(1));
  return {p1, dp};
}

std::shared_ptr<const GaussLegendreRule> build_rule(int n, Precision bits) {
  auto rule = std::make_shared<GaussLegendreRule>();
  rule->n = n;
  rule->bits = bits;
  const Precision wp = bits + 32;
  PrecisionScope scope(wp);
  const Real tol = epsilon(bits + 16);
  for (int i = 1; i <= (n + 1) / 2; ++i) {
    double xd = std::cos(M_PI * (i - 0.25) / (n + 0.5));
    for (int it = 0; it < 100; ++it) {
      const auto [p, dp] = legendre<double>(n, xd);
      const double dx = p / dp;
      xd -= dx;
      if (std::abs(dx) < 1e-15) break;
    }
    Real x(xd);
    if (n % 2 == 1 && i == (n + 1) / 2) x = Real(0);
    Real dp_final;
    for (int it = 0; it < 64; ++it) {
      auto [p, dp] = legendre<Real>(n, x);
      const Real dx = p / dp;
      x -= dx;
      dp_final = std::move(dp);
      if (abs(dx) < tol) {
        auto [p2, dp2] = legendre<Real>(n, x);
        dp_final = std::move(dp2);
        break;
      }
      if (it == 63) throw ConvergenceError("Gauss-Legendre node did not converge");
    }
    const Real w = Real(2) / ((Real(1) - x * x) * dp_final * dp_final);
    rule->nodes.push_back(x.at_precision(bits));
    rule->weights.push_back(w.at_precision(bits));
  }
  return rule;
}

}  // namespace

std::shared_ptr<const GaussLegendreRule> gauss_legendre(int n, Precision bits) {
  if (n < 1) throw DomainError("gauss_legendre: n must be positive");
  {
    std::lock_guard lock(g_rule_mutex);
    auto it = g_rules.find({n, bits});
    if (it != g_rules.end()) return it->second;
  }
  auto rule = build_rule(n, bits);
  std::lock_guard lock(g_rule_mutex);
  return g_rules.emplace(std::make_pair(n, bits), rule).first->second;
}

}  // namespace zetalab::hp
