#pragma once

#include <cstddef>
#include <optional>
#include <random>
#include <string>
#include <string_view>
#include <vector>

#include "zetalab/cyclotomy.hpp"

namespace zetalab {

// Square matrix over the pointed monoid (Q/Z) u {*} with at most one
// non-basepoint entry per column. Indices are 0-based in the API and
// 1-based in the JSON form.
class MonoidMatrix {
 public:
  struct Entry {
    std::size_t row;
    Root value;
    friend bool operator==(const Entry&, const Entry&) = default;
  };

  MonoidMatrix() = default;
  explicit MonoidMatrix(std::size_t n) : cols_(n) {}
  static MonoidMatrix identity(std::size_t n);
  static MonoidMatrix diagonal(const std::vector<Root>& d);

  // {"n":2,"cols":{"1":[2,"1/4"],"2":[1,"1/3"]}}; throws ParseError.
  static MonoidMatrix from_json(std::string_view text);
  std::string to_json() const;

  std::size_t dim() const { return cols_.size(); }
  const std::optional<Entry>& column(std::size_t j) const { return cols_.at(j); }
  void set(std::size_t col, std::size_t row, const Root& value);
  void clear(std::size_t col) { cols_.at(col).reset(); }

  // Dense embedding e(a/q) -> exp(2 pi i a/q), row-major.
  std::vector<hp::Complex> embed(hp::Precision bits) const;

  friend bool operator==(const MonoidMatrix&, const MonoidMatrix&) = default;

 private:
  std::vector<std::optional<Entry>> cols_;
};

// Dense matrix over Z[Q/Z].
class DivisorMatrix {
 public:
  DivisorMatrix() = default;
  explicit DivisorMatrix(std::size_t n) : n_(n), e_(n * n) {}
  static DivisorMatrix from(const MonoidMatrix& m);
  static DivisorMatrix scalar(std::size_t n, const Divisor& d);

  std::size_t dim() const { return n_; }
  Divisor& operator()(std::size_t i, std::size_t j) { return e_.at(i * n_ + j); }
  const Divisor& operator()(std::size_t i, std::size_t j) const { return e_.at(i * n_ + j); }
  std::vector<hp::Complex> embed(hp::Precision bits) const;

  friend bool operator==(const DivisorMatrix&, const DivisorMatrix&) = default;

 private:
  std::size_t n_ = 0;
  std::vector<Divisor> e_;
};

// (a b): column k of b is (j, v) and column j of a is (i, w) => (i, w + v).
MonoidMatrix compose(const MonoidMatrix& a, const MonoidMatrix& b);
// The universal invariant: the divisor of nonzero eigenvalues.
Divisor tau(const MonoidMatrix& t);
// F_n(T) = T^n.
MonoidMatrix frobenius(unsigned n, const MonoidMatrix& t);
// V_n(T) on n copies: block (k+1, k) is the identity, block (1, n) is T.
MonoidMatrix verschiebung(unsigned n, const MonoidMatrix& t);
// Block direct sum.
MonoidMatrix wedge(const MonoidMatrix& t1, const MonoidMatrix& t2);
// Kronecker product; index (i1, i2) -> i1 * n2 + i2, values added.
MonoidMatrix smash(const MonoidMatrix& t1, const MonoidMatrix& t2);
// Inverse of a monomial matrix whose columns are all bound to distinct rows.
MonoidMatrix invert_monomial(const MonoidMatrix& g);

// Products of the Mat_n(Z[Q/Z]) bimodule.
DivisorMatrix operator*(const DivisorMatrix& a, const DivisorMatrix& b);
DivisorMatrix operator*(const MonoidMatrix& a, const DivisorMatrix& b);
DivisorMatrix operator*(const DivisorMatrix& a, const MonoidMatrix& b);

struct FourierPair {
  DivisorMatrix V;      // V_ij = e(ij/n), 0 <= i, j < n
  DivisorMatrix W;      // W_ij = e(-ij/n)
  MonoidMatrix C;       // column j -> row j+1 mod n
  MonoidMatrix Delta;   // diag(e(j/n))
};
FourierPair fourier_pair(std::size_t n);

// Random column-monomial matrix: each column empty with probability p_empty,
// otherwise a uniform row and a root with uniform denominator <= max_den.
MonoidMatrix random_monoid_matrix(std::mt19937_64& rng, std::size_t n, long max_den, double p_empty = 0.2);

// Every matrix of dimension 1..max_dim whose roots have denominator <= max_den
// (empty columns included). Grows like (max_dim * #roots + 1)^max_dim.
std::vector<MonoidMatrix> enumerate_monoid_matrices(std::size_t max_dim, long max_den);

// max |(V W - n I)_ij| after embedding at the given precision.
hp::Real fourier_inverse_defect(const FourierPair& f, hp::Precision bits);

}  // namespace zetalab
