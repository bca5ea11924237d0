#include "zetalab/hp/special.hpp"

#include <cmath>
#include <mutex>
#include <vector>

#include "zetalab/error.hpp"

namespace zetalab::hp {

namespace {

std::mutex g_bernoulli_mutex;
std::vector<mpq_class> g_bernoulli{mpq_class(1)};

Real from_q(const mpq_class& q, Precision bits) {
  Real r = Real::with_bits(bits);
  mpfr_set_q(r.get(), q.get_mpq_t(), MPFR_RNDN);
  return r;
}

bool is_nonpositive_integer(const Complex& z) {
  return z.im.is_zero() && z.re.sign() <= 0 && floor(z.re) == z.re;
}

// Radius beyond which the asymptotic series reaches 2^-bits.
double stirling_radius(Precision bits) { return static_cast<double>(bits) * 0.1104 + 8.0; }

// Smallest N >= 0 with |z + N| >= r and Re(z + N) >= r/2.
long shift_for(const Complex& z, double r) {
  const double x = z.re.to_double();
  const double y = std::abs(z.im.to_double());
  long n = 0;
  if (x < r / 2) n = static_cast<long>(std::ceil(r / 2 - x));
  const double xs = x + static_cast<double>(n);
  if (xs * xs + y * y < r * r) n += static_cast<long>(std::ceil(std::sqrt(r * r - y * y) - xs));
  return n;
}

}  // namespace

mpq_class bernoulli(unsigned n) {
  std::lock_guard lock(g_bernoulli_mutex);
  while (g_bernoulli.size() <= n) {
    const unsigned m = static_cast<unsigned>(g_bernoulli.size());
    if (m > 1 && m % 2 == 1) {
      g_bernoulli.emplace_back(0);
      continue;
    }
    // sum_{k=0}^{m} C(m+1,k) B_k = 0
    mpq_class acc(0);
    mpz_class binom(1);
    for (unsigned k = 0; k < m; ++k) {
      acc += binom * g_bernoulli[k];
      binom = binom * (m + 1 - k) / (k + 1);
    }
    mpq_class b = -acc / (m + 1);
    b.canonicalize();
    g_bernoulli.push_back(b);
  }
  return g_bernoulli[n];
}

Complex lgamma(const Complex& z_in) {
  if (is_nonpositive_integer(z_in)) throw DomainError("lgamma: pole");
  const Precision p = z_in.precision();
  const Precision wp = p + 24;
  PrecisionScope scope(wp);
  Complex z = z_in.at_precision(wp);
  const long shift = shift_for(z, stirling_radius(wp));
  Complex correction = Complex::zero(wp);
  for (long j = 0; j < shift; ++j) correction += log(z + Complex(Real(j)));
  Complex w = z + Complex(Real(shift));

  const Real half = Real(1) / 2L;
  Complex s = (w - Complex(half)) * log(w) - w + Complex(log(pi(wp) * 2L) / 2L);
  const Complex w2inv = Complex(Real(1)) / (w * w);
  Complex wpow = Complex(Real(1)) / w;
  const Real eps = epsilon(wp);
  for (unsigned k = 1; k < 4 * static_cast<unsigned>(wp); ++k) {
    const Real c = from_q(bernoulli(2 * k), wp) / static_cast<long>((2 * k) * (2 * k - 1));
    Complex term = wpow * c;
    s += term;
    if (abs(term) < eps * abs(s)) break;
    wpow *= w2inv;
  }
  return (s - correction).at_precision(p);
}

Complex gamma(const Complex& z) {
  if (is_nonpositive_integer(z)) throw DomainError("gamma: pole");
  return exp(lgamma(z));
}

Complex digamma(const Complex& z_in) {
  if (is_nonpositive_integer(z_in)) throw DomainError("digamma: pole");
  const Precision p = z_in.precision();
  const Precision wp = p + 24;
  PrecisionScope scope(wp);
  Complex z = z_in.at_precision(wp);
  const long shift = shift_for(z, stirling_radius(wp));
  Complex correction = Complex::zero(wp);
  for (long j = 0; j < shift; ++j) correction += Complex(Real(1)) / (z + Complex(Real(j)));
  Complex w = z + Complex(Real(shift));

  Complex s = log(w) - Complex(Real(1)) / (w * 2L);
  const Complex w2inv = Complex(Real(1)) / (w * w);
  Complex wpow = w2inv;
  const Real eps = epsilon(wp);
  for (unsigned k = 1; k < 4 * static_cast<unsigned>(wp); ++k) {
    const Real c = from_q(bernoulli(2 * k), wp) / static_cast<long>(2 * k);
    Complex term = wpow * c;
    s -= term;
    if (abs(term) < eps * abs(s)) break;
    wpow *= w2inv;
  }
  return (s - correction).at_precision(p);
}

Complex zeta(const Complex& s_in) {
  const Precision p = s_in.precision();
  if (s_in.im.is_zero() && s_in.re == Real(1)) throw DomainError("zeta: pole at s = 1");
  const Precision wp = p + 32;
  PrecisionScope scope(wp);
  Complex s = s_in.at_precision(wp);
  if (s.re.sign() < 0) {
    // zeta(s) = 2^s pi^{s-1} sin(pi s / 2) Gamma(1-s) zeta(1-s)
    const Real pi_ = pi(wp);
    const Complex one_minus = Complex(Real(1)) - s;
    Complex r = pow(Real(2), s) * pow(pi_, s - Complex(Real(1))) * sin(s * pi_ / 2L) * gamma(one_minus) *
                zeta(one_minus);
    return r.at_precision(p);
  }
  const double abs_s = abs(s).to_double();
  const long n = static_cast<long>(std::ceil((abs_s + static_cast<double>(wp)) / 3.14159)) + 10;
  Complex acc = Complex::zero(wp);
  for (long k = 1; k < n; ++k) acc += pow(Real(k), -s);
  const Real nr(n);
  const Complex n_minus_s = pow(nr, -s);
  acc += n_minus_s * nr / (s - Complex(Real(1)));
  acc += n_minus_s / 2L;

  // Tail: sum_k B_{2k}/(2k)! * s(s+1)...(s+2k-2) * N^{-s-2k+1}
  const Real eps = epsilon(wp);
  Complex rising = s;  // s(s+1)...(s+2k-2)
  Complex npow = n_minus_s / nr;
  const Real n2inv = Real(1) / (nr * nr);
  mpz_class fact(2);  // (2k)!
  bool converged = false;
  for (unsigned k = 1; k < 4 * static_cast<unsigned>(wp); ++k) {
    Real c = from_q(bernoulli(2 * k) / mpq_class(fact), wp);
    Complex term = rising * npow * c;
    acc += term;
    if (abs(term) < eps * abs(acc)) {
      converged = true;
      break;
    }
    const Complex a = s + Complex(Real(static_cast<long>(2 * k - 1)));
    const Complex b = s + Complex(Real(static_cast<long>(2 * k)));
    rising = rising * a * b;
    npow *= n2inv;
    fact *= static_cast<unsigned long>((2 * k + 1) * (2 * k + 2));
  }
  if (!converged) throw ConvergenceError("zeta: Euler-Maclaurin tail did not converge");
  return acc.at_precision(p);
}

Complex gamma_factor(const Complex& z) {
  const Precision p = z.precision();
  PrecisionScope scope(p + 16);
  const Complex zw = z.at_precision(p + 16);
  const Complex half = zw / 2L;
  return (pow(pi(p + 16), -half) * gamma(half)).at_precision(p);
}

}  // namespace zetalab::hp
