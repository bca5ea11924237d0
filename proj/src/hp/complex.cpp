#include "zetalab/hp/complex.hpp"

#include <ostream>

#include "zetalab/error.hpp"

namespace zetalab::hp {

Complex Complex::polar(const Real& theta) {
  Real s, c;
  sin_cos(theta, s, c);
  return {std::move(c), std::move(s)};
}

Complex Complex::polar(const Real& rho, const Real& theta) { return polar(theta) * rho; }

std::string Complex::to_string(int digits) const {
  std::string out = re.to_string(digits);
  out += im.sign() < 0 ? " - " : " + ";
  out += abs(im).to_string(digits);
  out += "i";
  return out;
}

std::ostream& operator<<(std::ostream& os, const Complex& z) {
  const auto p = os.precision();
  return os << z.to_string(p > 0 ? static_cast<int>(p) : 20);
}

// Smith's algorithm keeps intermediate magnitudes bounded.
Complex operator/(const Complex& a, const Complex& b) {
  if (b.is_zero()) throw DomainError("complex division by zero");
  if (abs(b.re) >= abs(b.im)) {
    const Real r = b.im / b.re;
    const Real d = b.re + b.im * r;
    return {(a.re + a.im * r) / d, (a.im - a.re * r) / d};
  }
  const Real r = b.re / b.im;
  const Real d = b.re * r + b.im;
  return {(a.re * r + a.im) / d, (a.im * r - a.re) / d};
}

Real abs(const Complex& z) { return hypot(z.re, z.im); }
Real arg(const Complex& z) { return atan2(z.im, z.re); }

Complex exp(const Complex& z) { return Complex::polar(exp(z.re), z.im); }

Complex log(const Complex& z) {
  if (z.is_zero()) throw DomainError("log(0)");
  return {log(abs(z)), arg(z)};
}

Complex sqrt(const Complex& z) {
  if (z.is_zero()) return Complex::zero(z.precision());
  const Real m = abs(z);
  Real a = sqrt((m + abs(z.re)) / 2L);
  if (z.re.sign() >= 0) return {a, z.im / (a * 2L)};
  Real b = z.im.sign() < 0 ? -a : a;
  return {abs(z.im) / (a * 2L), std::move(b)};
}

Complex pow(const Complex& z, const Complex& w) {
  if (z.is_zero()) return Complex::zero(z.precision());
  return exp(w * log(z));
}

Complex pow(const Real& x, const Complex& w) {
  if (x.sign() <= 0) throw DomainError("pow: real base must be positive");
  const Real lx = log(x);
  return Complex::polar(exp(w.re * lx), w.im * lx);
}

Complex sin(const Complex& z) { return {sin(z.re) * cosh(z.im), cos(z.re) * sinh(z.im)}; }
Complex cos(const Complex& z) { return {cos(z.re) * cosh(z.im), -(sin(z.re) * sinh(z.im))}; }
Complex sinh(const Complex& z) { return {sinh(z.re) * cos(z.im), cosh(z.re) * sin(z.im)}; }
Complex cosh(const Complex& z) { return {cosh(z.re) * cos(z.im), sinh(z.re) * sin(z.im)}; }

}  // namespace zetalab::hp
