#pragma once

#include <gmpxx.h>

#include <map>
#include <string>
#include <string_view>

#include "zetalab/hp/complex.hpp"

namespace zetalab {

// An element of Q/Z, stored as a reduced fraction num/den with 0 <= num < den.
// Denotes the abstract root of unity e(num/den).
class Root {
 public:
  Root() : num_(0), den_(1) {}
  // Any integers with den != 0; reduced modulo 1.
  Root(const mpz_class& num, const mpz_class& den);
  Root(long num, long den) : Root(mpz_class(num), mpz_class(den)) {}

  // Accepts "a/b" or an integer.
  static Root parse(std::string_view text);

  const mpz_class& num() const { return num_; }
  const mpz_class& den() const { return den_; }
  bool is_zero() const { return num_ == 0; }
  Root operator-() const;
  // n * r in Q/Z.
  Root times(const mpz_class& n) const;
  // "a/b", or "0".
  std::string fraction() const;
  // exp(2 pi i num/den).
  hp::Complex embed(hp::Precision bits) const;

  friend bool operator==(const Root& a, const Root& b) { return a.num_ == b.num_ && a.den_ == b.den_; }
  // Order by (den, num).
  friend bool operator<(const Root& a, const Root& b) {
    const int c = cmp(a.den_, b.den_);
    return c != 0 ? c < 0 : a.num_ < b.num_;
  }

 private:
  mpz_class num_;
  mpz_class den_;
};

Root root_add(const Root& a, const Root& b);
inline Root operator+(const Root& a, const Root& b) { return root_add(a, b); }

// Finite formal sum of roots with integer coefficients: an element of the
// group ring Z[Q/Z]. Terms are kept sorted by (den, num) with no zero
// coefficients, so equality is structural.
class Divisor {
 public:
  using Terms = std::map<Root, mpz_class>;

  Divisor() = default;
  explicit Divisor(const Root& r, const mpz_class& c = 1) { add_term(r, c); }

  // Inverse of to_string; throws ParseError.
  static Divisor parse(std::string_view text);

  const Terms& terms() const { return terms_; }
  bool empty() const { return terms_.empty(); }
  // Sum of coefficients (the augmentation).
  mpz_class mass() const;
  // Coefficient of e(r), 0 if absent.
  mpz_class coefficient(const Root& r) const;
  void add_term(const Root& r, const mpz_class& c);

  // "e(7/24) + e(19/24)", "2*e(0) - e(1/2)", or "0" when empty.
  std::string to_string() const;
  // Sum of c * exp(2 pi i r).
  hp::Complex embed(hp::Precision bits) const;

  Divisor& operator+=(const Divisor& o);
  Divisor& operator-=(const Divisor& o);
  friend Divisor operator+(Divisor a, const Divisor& b) { return a += b; }
  friend Divisor operator-(Divisor a, const Divisor& b) { return a -= b; }
  friend Divisor operator*(const mpz_class& k, const Divisor& x);
  friend bool operator==(const Divisor& a, const Divisor& b) { return a.terms_ == b.terms_; }

 private:
  Terms terms_;
};

// Group-ring product: e(x) e(y) = e(x + y).
Divisor divisor_mul(const Divisor& x, const Divisor& y);
inline Divisor operator*(const Divisor& x, const Divisor& y) { return divisor_mul(x, y); }

// sigma_n(e(g)) = e(n g). Throws DomainError for n < 1.
Divisor sigma(const mpz_class& n, const Divisor& x);
// rho~_n(e(g)) = sum over the n solutions g' of n g' = g.
Divisor rho_tilde(const mpz_class& n, const Divisor& x);

}  // namespace zetalab
