#include "zetalab/witt.hpp"

#include <numeric>

#include <json.hpp>

#include "zetalab/error.hpp"

namespace zetalab {

using json = nlohmann::json;

MonoidMatrix MonoidMatrix::identity(std::size_t n) {
  MonoidMatrix m(n);
  for (std::size_t j = 0; j < n; ++j) m.set(j, j, Root());
  return m;
}

MonoidMatrix MonoidMatrix::diagonal(const std::vector<Root>& d) {
  MonoidMatrix m(d.size());
  for (std::size_t j = 0; j < d.size(); ++j) m.set(j, j, d[j]);
  return m;
}

void MonoidMatrix::set(std::size_t col, std::size_t row, const Root& value) {
  if (col >= cols_.size() || row >= cols_.size()) throw DomainError("MonoidMatrix: index out of range");
  cols_[col] = Entry{row, value};
}

MonoidMatrix MonoidMatrix::from_json(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("matrix JSON: ") + e.what());
  }
  if (!doc.is_object() || !doc.contains("n") || !doc["n"].is_number_unsigned())
    throw ParseError("matrix JSON: missing non-negative integer field 'n'");
  const auto n = doc["n"].get<std::size_t>();
  MonoidMatrix m(n);
  if (!doc.contains("cols")) return m;
  if (!doc["cols"].is_object()) throw ParseError("matrix JSON: 'cols' must be an object");
  for (const auto& [key, val] : doc["cols"].items()) {
    std::size_t col = 0;
    try {
      std::size_t used = 0;
      col = std::stoul(key, &used);
      if (used != key.size()) throw std::invalid_argument(key);
    } catch (const std::exception&) {
      throw ParseError("matrix JSON: column key '" + key + "' is not an integer");
    }
    if (!val.is_array() || val.size() != 2 || !val[0].is_number_unsigned())
      throw ParseError("matrix JSON: column " + key + " must be [row, \"a/b\"]");
    const auto row = val[0].get<std::size_t>();
    if (col < 1 || col > n || row < 1 || row > n)
      throw ParseError("matrix JSON: index out of range in column " + key);
    Root r;
    if (val[1].is_string()) {
      r = Root::parse(val[1].get<std::string>());
    } else if (val[1].is_number_integer()) {
      r = Root(val[1].get<long>(), 1);
    } else {
      throw ParseError("matrix JSON: value in column " + key + " must be a fraction string");
    }
    m.set(col - 1, row - 1, r);
  }
  return m;
}

std::string MonoidMatrix::to_json() const {
  json cols = json::object();
  for (std::size_t j = 0; j < cols_.size(); ++j)
    if (cols_[j]) cols[std::to_string(j + 1)] = json::array({cols_[j]->row + 1, cols_[j]->value.fraction()});
  return json{{"n", cols_.size()}, {"cols", cols}}.dump();
}

std::vector<hp::Complex> MonoidMatrix::embed(hp::Precision bits) const {
  const std::size_t n = dim();
  std::vector<hp::Complex> out(n * n, hp::Complex::zero(bits));
  for (std::size_t j = 0; j < n; ++j)
    if (cols_[j]) out[cols_[j]->row * n + j] = cols_[j]->value.embed(bits);
  return out;
}

DivisorMatrix DivisorMatrix::from(const MonoidMatrix& m) {
  DivisorMatrix d(m.dim());
  for (std::size_t j = 0; j < m.dim(); ++j)
    if (const auto& e = m.column(j)) d(e->row, j) = Divisor(e->value);
  return d;
}

DivisorMatrix DivisorMatrix::scalar(std::size_t n, const Divisor& x) {
  DivisorMatrix d(n);
  for (std::size_t i = 0; i < n; ++i) d(i, i) = x;
  return d;
}

std::vector<hp::Complex> DivisorMatrix::embed(hp::Precision bits) const {
  std::vector<hp::Complex> out;
  out.reserve(e_.size());
  for (const auto& d : e_) out.push_back(d.embed(bits));
  return out;
}

MonoidMatrix compose(const MonoidMatrix& a, const MonoidMatrix& b) {
  if (a.dim() != b.dim()) throw DomainError("compose: dimension mismatch");
  MonoidMatrix out(a.dim());
  for (std::size_t k = 0; k < b.dim(); ++k) {
    const auto& eb = b.column(k);
    if (!eb) continue;
    const auto& ea = a.column(eb->row);
    if (!ea) continue;
    out.set(k, ea->row, ea->value + eb->value);
  }
  return out;
}

Divisor tau(const MonoidMatrix& t) {
  const std::size_t n = t.dim();
  // Range of phi^l, as a membership mask; stabilizes after at most n steps.
  std::vector<char> live(n, 1);
  for (std::size_t step = 0; step <= n; ++step) {
    std::vector<char> next(n, 0);
    for (std::size_t j = 0; j < n; ++j)
      if (live[j] && t.column(j)) next[t.column(j)->row] = 1;
    if (next == live) break;
    live = std::move(next);
  }
  // phi restricted to the stable range is a permutation; sum over its cycles.
  Divisor out;
  std::vector<char> seen(n, 0);
  for (std::size_t start = 0; start < n; ++start) {
    if (!live[start] || seen[start]) continue;
    Root sum;
    unsigned long length = 0;
    std::size_t j = start;
    do {
      seen[j] = 1;
      sum = sum + t.column(j)->value;
      ++length;
      j = t.column(j)->row;
    } while (j != start);
    out += rho_tilde(mpz_class(length), Divisor(sum));
  }
  return out;
}

MonoidMatrix frobenius(unsigned n, const MonoidMatrix& t) {
  if (n < 1) throw DomainError("frobenius: n must be >= 1");
  MonoidMatrix out = t;
  for (unsigned k = 1; k < n; ++k) out = compose(out, t);
  return out;
}

MonoidMatrix verschiebung(unsigned n, const MonoidMatrix& t) {
  if (n < 1) throw DomainError("verschiebung: n must be >= 1");
  const std::size_t d = t.dim();
  MonoidMatrix out(n * d);
  for (unsigned k = 0; k + 1 < n; ++k)
    for (std::size_t j = 0; j < d; ++j) out.set(k * d + j, (k + 1) * d + j, Root());
  for (std::size_t j = 0; j < d; ++j)
    if (const auto& e = t.column(j)) out.set((n - 1) * d + j, e->row, e->value);
  return out;
}

MonoidMatrix wedge(const MonoidMatrix& t1, const MonoidMatrix& t2) {
  const std::size_t n1 = t1.dim();
  MonoidMatrix out(n1 + t2.dim());
  for (std::size_t j = 0; j < n1; ++j)
    if (const auto& e = t1.column(j)) out.set(j, e->row, e->value);
  for (std::size_t j = 0; j < t2.dim(); ++j)
    if (const auto& e = t2.column(j)) out.set(n1 + j, n1 + e->row, e->value);
  return out;
}

MonoidMatrix smash(const MonoidMatrix& t1, const MonoidMatrix& t2) {
  const std::size_t n2 = t2.dim();
  MonoidMatrix out(t1.dim() * n2);
  for (std::size_t j1 = 0; j1 < t1.dim(); ++j1) {
    const auto& e1 = t1.column(j1);
    if (!e1) continue;
    for (std::size_t j2 = 0; j2 < n2; ++j2)
      if (const auto& e2 = t2.column(j2)) out.set(j1 * n2 + j2, e1->row * n2 + e2->row, e1->value + e2->value);
  }
  return out;
}

MonoidMatrix invert_monomial(const MonoidMatrix& g) {
  const std::size_t n = g.dim();
  MonoidMatrix out(n);
  std::vector<char> hit(n, 0);
  for (std::size_t j = 0; j < n; ++j) {
    const auto& e = g.column(j);
    if (!e || hit[e->row]) throw DomainError("invert_monomial: matrix is not invertible");
    hit[e->row] = 1;
    out.set(e->row, j, -e->value);
  }
  return out;
}

DivisorMatrix operator*(const DivisorMatrix& a, const DivisorMatrix& b) {
  if (a.dim() != b.dim()) throw DomainError("DivisorMatrix product: dimension mismatch");
  const std::size_t n = a.dim();
  DivisorMatrix out(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      if (a(i, j).empty()) continue;
      for (std::size_t k = 0; k < n; ++k)
        if (!b(j, k).empty()) out(i, k) += divisor_mul(a(i, j), b(j, k));
    }
  return out;
}

DivisorMatrix operator*(const MonoidMatrix& a, const DivisorMatrix& b) {
  if (a.dim() != b.dim()) throw DomainError("bimodule product: dimension mismatch");
  const std::size_t n = a.dim();
  DivisorMatrix out(n);
  for (std::size_t j = 0; j < n; ++j) {
    const auto& e = a.column(j);
    if (!e) continue;
    const Divisor w(e->value);
    for (std::size_t k = 0; k < n; ++k)
      if (!b(j, k).empty()) out(e->row, k) += divisor_mul(w, b(j, k));
  }
  return out;
}

DivisorMatrix operator*(const DivisorMatrix& a, const MonoidMatrix& b) {
  if (a.dim() != b.dim()) throw DomainError("bimodule product: dimension mismatch");
  const std::size_t n = a.dim();
  DivisorMatrix out(n);
  for (std::size_t k = 0; k < n; ++k) {
    const auto& e = b.column(k);
    if (!e) continue;
    const Divisor v(e->value);
    for (std::size_t i = 0; i < n; ++i)
      if (!a(i, e->row).empty()) out(i, k) += divisor_mul(a(i, e->row), v);
  }
  return out;
}

FourierPair fourier_pair(std::size_t n) {
  if (n == 0) throw DomainError("fourier_pair: n must be >= 1");
  const long nl = static_cast<long>(n);
  FourierPair f{DivisorMatrix(n), DivisorMatrix(n), MonoidMatrix(n), MonoidMatrix(n)};
  for (long i = 0; i < nl; ++i) {
    for (long j = 0; j < nl; ++j) {
      f.V(i, j) = Divisor(Root(i * j, nl));
      f.W(i, j) = Divisor(Root(-i * j, nl));
    }
    f.C.set(i, (i + 1) % nl, Root());
    f.Delta.set(i, i, Root(i, nl));
  }
  return f;
}

hp::Real fourier_inverse_defect(const FourierPair& f, hp::Precision bits) {
  hp::PrecisionScope scope(bits);
  const std::size_t n = f.V.dim();
  const auto v = f.V.embed(bits);
  const auto w = f.W.embed(bits);
  hp::Real worst = hp::Real::with_bits(bits);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = 0; k < n; ++k) {
      hp::Complex acc = hp::Complex::zero(bits);
      for (std::size_t j = 0; j < n; ++j) acc += v[i * n + j] * w[j * n + k];
      if (i == k) acc -= hp::Complex(hp::Real(static_cast<long>(n)));
      worst = hp::max(worst, hp::abs(acc));
    }
  return worst;
}

MonoidMatrix random_monoid_matrix(std::mt19937_64& rng, std::size_t n, long max_den, double p_empty) {
  MonoidMatrix m(n);
  std::uniform_real_distribution<double> u(0, 1);
  std::uniform_int_distribution<std::size_t> row(0, n - 1);
  std::uniform_int_distribution<long> den(1, max_den);
  for (std::size_t j = 0; j < n; ++j) {
    if (u(rng) < p_empty) continue;
    const long q = den(rng);
    std::uniform_int_distribution<long> num(0, q - 1);
    m.set(j, row(rng), Root(num(rng), q));
  }
  return m;
}

std::vector<MonoidMatrix> enumerate_monoid_matrices(std::size_t max_dim, long max_den) {
  std::vector<Root> roots;
  for (long q = 1; q <= max_den; ++q)
    for (long a = 0; a < q; ++a)
      if (std::gcd(a, q) == 1) roots.emplace_back(a, q);
  std::vector<MonoidMatrix> out;
  for (std::size_t n = 1; n <= max_dim; ++n) {
    // Column j takes option c_j in [0, n * #roots]; 0 is the empty column.
    const std::size_t per = n * roots.size() + 1;
    std::vector<std::size_t> digit(n, 0);
    while (true) {
      MonoidMatrix m(n);
      for (std::size_t j = 0; j < n; ++j)
        if (digit[j] > 0) m.set(j, (digit[j] - 1) / roots.size(), roots[(digit[j] - 1) % roots.size()]);
      out.push_back(std::move(m));
      std::size_t j = 0;
      while (j < n && ++digit[j] == per) digit[j++] = 0;
      if (j == n) break;
    }
  }
  return out;
}

}  // namespace zetalab
