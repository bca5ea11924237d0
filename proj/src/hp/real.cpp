#include "zetalab/hp/real.hpp"

#include <ostream>
#include <string>

#include "zetalab/error.hpp"

namespace zetalab::hp {

namespace {
thread_local Precision g_default_precision = 256;

template <typename F>
Real unary(const Real& x, F f) {
  Real r = Real::with_bits(x.precision());
  f(r.get(), x.get(), MPFR_RNDN);
  return r;
}
}  // namespace

Precision default_precision() { return g_default_precision; }

void set_default_precision(Precision bits) {
  if (bits < MPFR_PREC_MIN || bits > MPFR_PREC_MAX) throw DomainError("precision out of range");
  g_default_precision = bits;
}

PrecisionScope::PrecisionScope(Precision bits) : saved_(g_default_precision) { set_default_precision(bits); }
PrecisionScope::~PrecisionScope() { g_default_precision = saved_; }

Real Real::parse(std::string_view text, Precision bits) {
  std::string s(text);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r' || s.back() == '\n')) s.pop_back();
  std::size_t start = 0;
  while (start < s.size() && (s[start] == ' ' || s[start] == '\t')) ++start;
  s.erase(0, start);
  if (s.empty()) throw ParseError("empty numeric literal");
  Real r = with_bits(bits);
  char* end = nullptr;
  if (mpfr_strtofr(r.get(), s.c_str(), &end, 10, MPFR_RNDN), end != s.c_str() + s.size())
    throw ParseError("malformed numeric literal '" + s + "'");
  return r;
}

std::string Real::to_string(int digits) const {
  if (mpfr_nan_p(v_)) return "nan";
  if (mpfr_inf_p(v_)) return mpfr_sgn(v_) > 0 ? "inf" : "-inf";
  if (digits < 1) digits = 1;
  char* buf = nullptr;
  const std::string fmt = "%." + std::to_string(digits - 1) + "Re";
  if (mpfr_asprintf(&buf, fmt.c_str(), v_) < 0) throw Error("mpfr_asprintf failed");
  std::string out(buf);
  mpfr_free_str(buf);
  return out;
}

std::ostream& operator<<(std::ostream& os, const Real& x) {
  const auto p = os.precision();
  return os << x.to_string(p > 0 ? static_cast<int>(p) : 20);
}

Real abs(const Real& x) { return unary(x, mpfr_abs); }
Real sqrt(const Real& x) { return unary(x, mpfr_sqrt); }
Real exp(const Real& x) { return unary(x, mpfr_exp); }
Real expm1(const Real& x) { return unary(x, mpfr_expm1); }
Real log(const Real& x) { return unary(x, mpfr_log); }
Real log1p(const Real& x) { return unary(x, mpfr_log1p); }
Real sin(const Real& x) { return unary(x, mpfr_sin); }
Real cos(const Real& x) { return unary(x, mpfr_cos); }
Real tan(const Real& x) { return unary(x, mpfr_tan); }
Real atan(const Real& x) { return unary(x, mpfr_atan); }
Real sinh(const Real& x) { return unary(x, mpfr_sinh); }
Real cosh(const Real& x) { return unary(x, mpfr_cosh); }
Real tanh(const Real& x) { return unary(x, mpfr_tanh); }
Real gamma(const Real& x) { return unary(x, mpfr_gamma); }
Real digamma(const Real& x) { return unary(x, mpfr_digamma); }
Real zeta(const Real& x) { return unary(x, mpfr_zeta); }
Real lgamma(const Real& x) {
  Real r = Real::with_bits(x.precision());
  int sign = 0;
  mpfr_lgamma(r.get(), &sign, x.get(), MPFR_RNDN);
  return r;
}

void sin_cos(const Real& x, Real& s, Real& c) {
  s = Real::with_bits(x.precision());
  c = Real::with_bits(x.precision());
  mpfr_sin_cos(s.get(), c.get(), x.get(), MPFR_RNDN);
}

Real atan2(const Real& y, const Real& x) {
  Real r = Real::with_bits(std::max(x.precision(), y.precision()));
  mpfr_atan2(r.get(), y.get(), x.get(), MPFR_RNDN);
  return r;
}

Real hypot(const Real& x, const Real& y) {
  Real r = Real::with_bits(std::max(x.precision(), y.precision()));
  mpfr_hypot(r.get(), x.get(), y.get(), MPFR_RNDN);
  return r;
}

Real pow(const Real& x, const Real& y) {
  Real r = Real::with_bits(std::max(x.precision(), y.precision()));
  mpfr_pow(r.get(), x.get(), y.get(), MPFR_RNDN);
  return r;
}

Real pow(const Real& x, long k) {
  Real r = Real::with_bits(x.precision());
  mpfr_pow_si(r.get(), x.get(), k, MPFR_RNDN);
  return r;
}

Real floor(const Real& x) {
  Real r = Real::with_bits(x.precision());
  mpfr_floor(r.get(), x.get());
  return r;
}

Real ceil(const Real& x) {
  Real r = Real::with_bits(x.precision());
  mpfr_ceil(r.get(), x.get());
  return r;
}

Real round(const Real& x) {
  Real r = Real::with_bits(x.precision());
  mpfr_round(r.get(), x.get());
  return r;
}

Real ldexp(const Real& x, long e) {
  Real r = Real::with_bits(x.precision());
  mpfr_mul_2si(r.get(), x.get(), e, MPFR_RNDN);
  return r;
}

Real max(const Real& a, const Real& b) { return a < b ? b : a; }
Real min(const Real& a, const Real& b) { return b < a ? b : a; }

Real pi(Precision bits) {
  Real r = Real::with_bits(bits);
  mpfr_const_pi(r.get(), MPFR_RNDN);
  return r;
}

Real euler_gamma(Precision bits) {
  Real r = Real::with_bits(bits);
  mpfr_const_euler(r.get(), MPFR_RNDN);
  return r;
}

Real ln2(Precision bits) {
  Real r = Real::with_bits(bits);
  mpfr_const_log2(r.get(), MPFR_RNDN);
  return r;
}

Real epsilon(Precision bits) {
  Real r = Real::with_bits(bits);
  mpfr_set_ui_2exp(r.get(), 1, -bits, MPFR_RNDN);
  return r;
}

}  // namespace zetalab::hp
