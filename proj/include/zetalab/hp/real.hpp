#pragma once

#include <cstdarg>
#include <cstdio>

#include <mpfr.h>

#include <algorithm>
#include <compare>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>
#include <utility>

namespace zetalab::hp {

using Precision = mpfr_prec_t;

// Precision (in bits) used for values constructed without an explicit one.
// Thread-local; the initial value is 256.
Precision default_precision();
void set_default_precision(Precision bits);

// Sets the thread's default precision for the lifetime of the scope.
class PrecisionScope {
 public:
  explicit PrecisionScope(Precision bits);
  ~PrecisionScope();
  PrecisionScope(const PrecisionScope&) = delete;
  PrecisionScope& operator=(const PrecisionScope&) = delete;

 private:
  Precision saved_;
};

// Owning wrapper around an mpfr_t. Each value carries its own precision;
// binary operations produce a result at the larger of the operand precisions.
// A moved-from Real may only be assigned to or destroyed.
class Real {
 public:
  Real() : Real(default_precision(), 0) {}
  // The int tag disambiguates from Real(long).
  Real(Precision bits, int /*tag*/) {
    mpfr_init2(v_, bits);
    mpfr_set_zero(v_, 1);
  }
  Real(double x) : Real(default_precision(), 0) { mpfr_set_d(v_, x, MPFR_RNDN); }
  Real(int x) : Real(default_precision(), 0) { mpfr_set_si(v_, x, MPFR_RNDN); }
  Real(long x) : Real(default_precision(), 0) { mpfr_set_si(v_, x, MPFR_RNDN); }
  Real(long long x) : Real(default_precision(), 0) { mpfr_set_si(v_, static_cast<long>(x), MPFR_RNDN); }
  Real(unsigned long x) : Real(default_precision(), 0) { mpfr_set_ui(v_, x, MPFR_RNDN); }
  Real(unsigned x) : Real(default_precision(), 0) { mpfr_set_ui(v_, x, MPFR_RNDN); }

  // Parses a decimal (or "inf"/"nan") string; throws ParseError on garbage.
  static Real parse(std::string_view text, Precision bits = default_precision());
  static Real with_bits(Precision bits) { return Real(bits, 0); }

  Real(const Real& o) {
    mpfr_init2(v_, mpfr_get_prec(o.v_));
    mpfr_set(v_, o.v_, MPFR_RNDN);
  }
  Real(Real&& o) noexcept {
    v_[0] = o.v_[0];
    o.v_[0]._mpfr_d = nullptr;
  }
  Real& operator=(const Real& o) {
    if (this == &o) return *this;
    if (v_[0]._mpfr_d == nullptr) {
      mpfr_init2(v_, mpfr_get_prec(o.v_));
    } else if (mpfr_get_prec(v_) != mpfr_get_prec(o.v_)) {
      mpfr_set_prec(v_, mpfr_get_prec(o.v_));
    }
    mpfr_set(v_, o.v_, MPFR_RNDN);
    return *this;
  }
  Real& operator=(Real&& o) noexcept {
    std::swap(v_[0], o.v_[0]);
    return *this;
  }
  ~Real() {
    if (v_[0]._mpfr_d != nullptr) mpfr_clear(v_);
  }

  Precision precision() const { return mpfr_get_prec(v_); }
  // Rounded copy at a different precision.
  Real at_precision(Precision bits) const {
    Real r(bits, 0);
    mpfr_set(r.v_, v_, MPFR_RNDN);
    return r;
  }

  mpfr_ptr get() { return v_; }
  mpfr_srcptr get() const { return v_; }

  double to_double() const { return mpfr_get_d(v_, MPFR_RNDN); }
  long to_long() const { return mpfr_get_si(v_, MPFR_RNDN); }
  // Scientific notation with `digits` significant decimal digits.
  std::string to_string(int digits = 20) const;

  bool is_zero() const { return mpfr_zero_p(v_) != 0; }
  bool is_finite() const { return mpfr_number_p(v_) != 0; }
  int sign() const { return mpfr_sgn(v_); }
  // Binary exponent e with 0.5 <= |x| / 2^e < 1; a large negative number for 0.
  long exponent() const { return is_zero() ? -(1L << 40) : static_cast<long>(mpfr_get_exp(v_)); }

  Real operator-() const {
    Real r(precision(), 0);
    mpfr_neg(r.v_, v_, MPFR_RNDN);
    return r;
  }

  Real& operator+=(const Real& o) {
    widen(o);
    mpfr_add(v_, v_, o.v_, MPFR_RNDN);
    return *this;
  }
  Real& operator-=(const Real& o) {
    widen(o);
    mpfr_sub(v_, v_, o.v_, MPFR_RNDN);
    return *this;
  }
  Real& operator*=(const Real& o) {
    widen(o);
    mpfr_mul(v_, v_, o.v_, MPFR_RNDN);
    return *this;
  }
  Real& operator/=(const Real& o) {
    widen(o);
    mpfr_div(v_, v_, o.v_, MPFR_RNDN);
    return *this;
  }
  Real& operator*=(long k) {
    mpfr_mul_si(v_, v_, k, MPFR_RNDN);
    return *this;
  }
  Real& operator/=(long k) {
    mpfr_div_si(v_, v_, k, MPFR_RNDN);
    return *this;
  }

  friend Real operator+(const Real& a, const Real& b) {
    Real r(std::max(a.precision(), b.precision()), 0);
    mpfr_add(r.v_, a.v_, b.v_, MPFR_RNDN);
    return r;
  }
  friend Real operator-(const Real& a, const Real& b) {
    Real r(std::max(a.precision(), b.precision()), 0);
    mpfr_sub(r.v_, a.v_, b.v_, MPFR_RNDN);
    return r;
  }
  friend Real operator*(const Real& a, const Real& b) {
    Real r(std::max(a.precision(), b.precision()), 0);
    mpfr_mul(r.v_, a.v_, b.v_, MPFR_RNDN);
    return r;
  }
  friend Real operator/(const Real& a, const Real& b) {
    Real r(std::max(a.precision(), b.precision()), 0);
    mpfr_div(r.v_, a.v_, b.v_, MPFR_RNDN);
    return r;
  }

  friend Real operator*(const Real& a, long k) {
    Real r(a.precision(), 0);
    mpfr_mul_si(r.v_, a.v_, k, MPFR_RNDN);
    return r;
  }
  friend Real operator*(long k, const Real& a) { return a * k; }
  friend Real operator*(const Real& a, int k) { return a * static_cast<long>(k); }
  friend Real operator*(int k, const Real& a) { return a * static_cast<long>(k); }
  friend Real operator/(const Real& a, long k) {
    Real r(a.precision(), 0);
    mpfr_div_si(r.v_, a.v_, k, MPFR_RNDN);
    return r;
  }
  friend Real operator/(const Real& a, int k) { return a / static_cast<long>(k); }

  friend bool operator==(const Real& a, const Real& b) { return mpfr_equal_p(a.v_, b.v_) != 0; }
  friend std::partial_ordering operator<=>(const Real& a, const Real& b) {
    if (mpfr_unordered_p(a.v_, b.v_)) return std::partial_ordering::unordered;
    const int c = mpfr_cmp(a.v_, b.v_);
    return c < 0 ? std::partial_ordering::less
                 : (c > 0 ? std::partial_ordering::greater : std::partial_ordering::equivalent);
  }

  friend std::ostream& operator<<(std::ostream& os, const Real& x);

 private:
  void widen(const Real& o) {
    if (mpfr_get_prec(o.v_) > mpfr_get_prec(v_)) mpfr_prec_round(v_, mpfr_get_prec(o.v_), MPFR_RNDN);
  }

  mpfr_t v_;
};

// Elementary functions; the result has the argument's precision.
Real abs(const Real& x);
Real sqrt(const Real& x);
Real exp(const Real& x);
Real expm1(const Real& x);
Real log(const Real& x);
Real log1p(const Real& x);
Real sin(const Real& x);
Real cos(const Real& x);
void sin_cos(const Real& x, Real& s, Real& c);
Real tan(const Real& x);
Real atan(const Real& x);
Real atan2(const Real& y, const Real& x);
Real sinh(const Real& x);
Real cosh(const Real& x);
Real tanh(const Real& x);
Real pow(const Real& x, const Real& y);
Real pow(const Real& x, long k);
Real floor(const Real& x);
Real ceil(const Real& x);
Real round(const Real& x);
Real ldexp(const Real& x, long e);
Real hypot(const Real& x, const Real& y);
Real lgamma(const Real& x);
Real digamma(const Real& x);
Real gamma(const Real& x);
Real zeta(const Real& x);
Real max(const Real& a, const Real& b);
Real min(const Real& a, const Real& b);

Real pi(Precision bits = default_precision());
Real euler_gamma(Precision bits = default_precision());
Real ln2(Precision bits = default_precision());

// 2^-bits at the given precision.
Real epsilon(Precision bits);

}  // namespace zetalab::hp
