#include "zetalab/cyclotomy.hpp"

#include <cctype>

#include "zetalab/error.hpp"

namespace zetalab {

namespace {

std::string trim(std::string_view s) {
  std::size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return std::string(s.substr(b, e - b));
}

mpz_class parse_integer(const std::string& s) {
  if (s.empty()) throw ParseError("empty integer");
  std::size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
  if (i == s.size()) throw ParseError("malformed integer '" + s + "'");
  for (std::size_t k = i; k < s.size(); ++k)
    if (!std::isdigit(static_cast<unsigned char>(s[k]))) throw ParseError("malformed integer '" + s + "'");
  return mpz_class(s[0] == '+' ? s.substr(1) : s, 10);
}

}  // namespace

Root::Root(const mpz_class& num, const mpz_class& den) {
  if (den == 0) throw DomainError("Root: zero denominator");
  num_ = num;
  den_ = den;
  if (den_ < 0) {
    num_ = -num_;
    den_ = -den_;
  }
  mpz_fdiv_r(num_.get_mpz_t(), num_.get_mpz_t(), den_.get_mpz_t());
  const mpz_class g = gcd(num_, den_);
  if (g > 1) {
    num_ /= g;
    den_ /= g;
  }
  if (num_ == 0) den_ = 1;
}

Root Root::parse(std::string_view text) {
  const std::string s = trim(text);
  const auto slash = s.find('/');
  if (slash == std::string::npos) return Root(parse_integer(s), mpz_class(1));
  const mpz_class den = parse_integer(trim(s.substr(slash + 1)));
  if (den == 0) throw ParseError("zero denominator in '" + s + "'");
  return Root(parse_integer(trim(s.substr(0, slash))), den);
}

Root Root::operator-() const { return Root(-num_, den_); }

Root Root::times(const mpz_class& n) const { return Root(num_ * n, den_); }

std::string Root::fraction() const {
  if (num_ == 0) return "0";
  return num_.get_str() + "/" + den_.get_str();
}

hp::Complex Root::embed(hp::Precision bits) const {
  hp::PrecisionScope scope(bits);
  hp::Real x = hp::Real::with_bits(bits);
  mpfr_set_z(x.get(), num_.get_mpz_t(), MPFR_RNDN);
  hp::Real d = hp::Real::with_bits(bits);
  mpfr_set_z(d.get(), den_.get_mpz_t(), MPFR_RNDN);
  return hp::Complex::polar(hp::pi(bits) * 2L * x / d);
}

Root root_add(const Root& a, const Root& b) {
  return Root(a.num() * b.den() + b.num() * a.den(), a.den() * b.den());
}

Divisor Divisor::parse(std::string_view text) {
  const std::string s = trim(text);
  Divisor out;
  if (s == "0") return out;
  if (s.empty()) throw ParseError("empty divisor");
  std::size_t pos = 0;
  bool first = true;
  while (pos < s.size()) {
    while (pos < s.size() && s[pos] == ' ') ++pos;
    int sign = 1;
    if (s[pos] == '+' || s[pos] == '-') {
      sign = s[pos] == '-' ? -1 : 1;
      ++pos;
      while (pos < s.size() && s[pos] == ' ') ++pos;
    } else if (!first) {
      throw ParseError("expected '+' or '-' in divisor '" + s + "'");
    }
    const auto open = s.find("e(", pos);
    if (open == std::string::npos) throw ParseError("expected e(...) in divisor '" + s + "'");
    mpz_class coeff(1);
    std::string prefix = trim(s.substr(pos, open - pos));
    if (!prefix.empty()) {
      if (prefix.back() != '*') throw ParseError("expected '*' before e(...) in '" + s + "'");
      prefix.pop_back();
      coeff = parse_integer(trim(prefix));
    }
    const auto close = s.find(')', open);
    if (close == std::string::npos) throw ParseError("unterminated e( in '" + s + "'");
    out.add_term(Root::parse(s.substr(open + 2, close - open - 2)), sign * coeff);
    pos = close + 1;
    first = false;
  }
  return out;
}

mpz_class Divisor::mass() const {
  mpz_class m(0);
  for (const auto& [r, c] : terms_) m += c;
  return m;
}

mpz_class Divisor::coefficient(const Root& r) const {
  const auto it = terms_.find(r);
  return it == terms_.end() ? mpz_class(0) : it->second;
}

void Divisor::add_term(const Root& r, const mpz_class& c) {
  if (c == 0) return;
  auto [it, inserted] = terms_.try_emplace(r, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

std::string Divisor::to_string() const {
  if (terms_.empty()) return "0";
  std::string out;
  bool first = true;
  for (const auto& [r, c] : terms_) {
    const mpz_class mag = abs(c);
    if (first) {
      if (c < 0) out += "-";
    } else {
      out += c < 0 ? " - " : " + ";
    }
    if (mag != 1) out += mag.get_str() + "*";
    out += "e(" + r.fraction() + ")";
    first = false;
  }
  return out;
}

hp::Complex Divisor::embed(hp::Precision bits) const {
  hp::PrecisionScope scope(bits);
  hp::Complex acc = hp::Complex::zero(bits);
  for (const auto& [r, c] : terms_) {
    hp::Real k = hp::Real::with_bits(bits);
    mpfr_set_z(k.get(), c.get_mpz_t(), MPFR_RNDN);
    acc += r.embed(bits) * k;
  }
  return acc;
}

Divisor& Divisor::operator+=(const Divisor& o) {
  for (const auto& [r, c] : o.terms_) add_term(r, c);
  return *this;
}

Divisor& Divisor::operator-=(const Divisor& o) {
  for (const auto& [r, c] : o.terms_) add_term(r, -c);
  return *this;
}

Divisor operator*(const mpz_class& k, const Divisor& x) {
  Divisor out;
  if (k == 0) return out;
  for (const auto& [r, c] : x.terms_) out.terms_.emplace(r, k * c);
  return out;
}

Divisor divisor_mul(const Divisor& x, const Divisor& y) {
  Divisor out;
  for (const auto& [rx, cx] : x.terms())
    for (const auto& [ry, cy] : y.terms()) out.add_term(rx + ry, cx * cy);
  return out;
}

Divisor sigma(const mpz_class& n, const Divisor& x) {
  if (n < 1) throw DomainError("sigma: n must be >= 1");
  Divisor out;
  for (const auto& [r, c] : x.terms()) out.add_term(r.times(n), c);
  return out;
}

Divisor rho_tilde(const mpz_class& n, const Divisor& x) {
  if (n < 1) throw DomainError("rho_tilde: n must be >= 1");
  Divisor out;
  for (const auto& [r, c] : x.terms()) {
    const mpz_class den = n * r.den();
    for (mpz_class j = 0; j < n; ++j) out.add_term(Root(r.num() + j * r.den(), den), c);
  }
  return out;
}

}  // namespace zetalab
