#pragma once

#include <complex>
#include <iosfwd>
#include <string>

#include "zetalab/hp/real.hpp"

namespace zetalab::hp {

// Rectangular complex number over Real. Precision is that of the parts.
struct Complex {
  Real re;
  Real im;

  Complex() = default;
  Complex(Real r) : re(std::move(r)), im(Real::with_bits(re.precision())) {}
  Complex(Real r, Real i) : re(std::move(r)), im(std::move(i)) {}
  Complex(double r) : Complex(Real(r)) {}
  Complex(int r) : Complex(Real(r)) {}
  Complex(long r) : Complex(Real(r)) {}

  static Complex zero(Precision bits) { return {Real::with_bits(bits), Real::with_bits(bits)}; }
  // e^{i theta}.
  static Complex polar(const Real& theta);
  static Complex polar(const Real& rho, const Real& theta);

  Precision precision() const { return std::max(re.precision(), im.precision()); }
  Complex at_precision(Precision bits) const { return {re.at_precision(bits), im.at_precision(bits)}; }
  std::complex<double> to_std() const { return {re.to_double(), im.to_double()}; }
  bool is_zero() const { return re.is_zero() && im.is_zero(); }
  std::string to_string(int digits = 20) const;

  Complex operator-() const { return {-re, -im}; }
  Complex& operator+=(const Complex& o) {
    re += o.re;
    im += o.im;
    return *this;
  }
  Complex& operator-=(const Complex& o) {
    re -= o.re;
    im -= o.im;
    return *this;
  }
  Complex& operator*=(const Complex& o) { return *this = *this * o; }
  Complex& operator/=(const Complex& o) { return *this = *this / o; }
  Complex& operator*=(const Real& k) {
    re *= k;
    im *= k;
    return *this;
  }
  Complex& operator/=(const Real& k) {
    re /= k;
    im /= k;
    return *this;
  }

  friend Complex operator+(Complex a, const Complex& b) { return a += b; }
  friend Complex operator-(Complex a, const Complex& b) { return a -= b; }
  friend Complex operator*(const Complex& a, const Complex& b) {
    return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
  }
  friend Complex operator/(const Complex& a, const Complex& b);
  friend Complex operator*(Complex a, const Real& k) { return a *= k; }
  friend Complex operator*(const Real& k, Complex a) { return a *= k; }
  friend Complex operator/(Complex a, const Real& k) { return a /= k; }
  friend Complex operator*(Complex a, long k) {
    a.re *= k;
    a.im *= k;
    return a;
  }
  friend Complex operator/(Complex a, long k) {
    a.re /= k;
    a.im /= k;
    return a;
  }

  friend std::ostream& operator<<(std::ostream& os, const Complex& z);
};

inline Complex conj(const Complex& z) { return {z.re, -z.im}; }
inline Real norm(const Complex& z) { return z.re * z.re + z.im * z.im; }
Real abs(const Complex& z);
Real arg(const Complex& z);
Complex exp(const Complex& z);
// Principal branch.
Complex log(const Complex& z);
Complex sqrt(const Complex& z);
Complex pow(const Complex& z, const Complex& w);
// x^w for real x > 0.
Complex pow(const Real& x, const Complex& w);
Complex sin(const Complex& z);
Complex cos(const Complex& z);
Complex sinh(const Complex& z);
Complex cosh(const Complex& z);
inline Complex i_times(const Complex& z) { return {-z.im, z.re}; }

}  // namespace zetalab::hp
