#pragma once

/// Dense exact linear algebra over the rationals.
///
/// Reduced row echelon forms back nullspaces and linear solves; the
/// fraction-free Bareiss elimination is the reference rank. A word-size
/// modular rank is provided as an accelerator for the large differential
/// matrices (see rank_report in differential_rank.hpp for how the two are
/// reconciled).

#include <hessmap/rational.hpp>

#include <cstddef>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <vector>

namespace hessmap {

class RationalMatrix {
 public:
  RationalMatrix() = default;
  RationalMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

  static RationalMatrix identity(std::size_t n) {
    RationalMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  Rational& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const Rational& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  std::vector<Rational> column(std::size_t c) const {
    std::vector<Rational> out(rows_);
    for (std::size_t r = 0; r < rows_; ++r) out[r] = (*this)(r, c);
    return out;
  }

  void set_column(std::size_t c, const std::vector<Rational>& values) {
    if (values.size() != rows_) throw std::invalid_argument("column length mismatch");
    for (std::size_t r = 0; r < rows_; ++r) (*this)(r, c) = values[r];
  }

  /// Horizontal concatenation [*this | other].
  RationalMatrix augmented(const RationalMatrix& other) const {
    if (other.rows_ != rows_) throw std::invalid_argument("row count mismatch");
    RationalMatrix out(rows_, cols_ + other.cols_);
    for (std::size_t r = 0; r < rows_; ++r) {
      for (std::size_t c = 0; c < cols_; ++c) out(r, c) = (*this)(r, c);
      for (std::size_t c = 0; c < other.cols_; ++c) out(r, cols_ + c) = other(r, c);
    }
    return out;
  }

  RationalMatrix operator*(const RationalMatrix& rhs) const {
    if (cols_ != rhs.rows_) throw std::invalid_argument("matrix product dimension mismatch");
    RationalMatrix out(rows_, rhs.cols_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t k = 0; k < cols_; ++k) {
        if (sgn((*this)(i, k)) == 0) continue;
        for (std::size_t j = 0; j < rhs.cols_; ++j) out(i, j) += (*this)(i, k) * rhs(k, j);
      }
    return out;
  }

  std::vector<Rational> operator*(const std::vector<Rational>& v) const {
    if (v.size() != cols_) throw std::invalid_argument("matrix-vector dimension mismatch");
    std::vector<Rational> out(rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) out[i] += (*this)(i, j) * v[j];
    return out;
  }

  RationalMatrix transposed() const {
    RationalMatrix out(cols_, rows_);
    for (std::size_t r = 0; r < rows_; ++r)
      for (std::size_t c = 0; c < cols_; ++c) out(c, r) = (*this)(r, c);
    return out;
  }

  bool operator==(const RationalMatrix&) const = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Rational> data_;
};

/// Reduced row echelon form with deterministic pivoting (first nonzero
/// entry, scanning rows top-down in each column).
struct EchelonForm {
  RationalMatrix reduced;
  std::vector<std::size_t> pivot_columns;
};

inline EchelonForm row_reduce(RationalMatrix m) {
  std::vector<std::size_t> pivots;
  std::size_t row = 0;
  for (std::size_t col = 0; col < m.cols() && row < m.rows(); ++col) {
    std::size_t pivot = row;
    while (pivot < m.rows() && sgn(m(pivot, col)) == 0) ++pivot;
    if (pivot == m.rows()) continue;
    if (pivot != row)
      for (std::size_t c = 0; c < m.cols(); ++c) std::swap(m(row, c), m(pivot, c));
    const Rational inv = 1 / m(row, col);
    for (std::size_t c = col; c < m.cols(); ++c) m(row, c) *= inv;
    for (std::size_t r = 0; r < m.rows(); ++r) {
      if (r == row || sgn(m(r, col)) == 0) continue;
      const Rational factor = m(r, col);
      for (std::size_t c = col; c < m.cols(); ++c)
        if (sgn(m(row, c)) != 0) m(r, c) -= factor * m(row, c);
    }
    pivots.push_back(col);
    ++row;
  }
  return {std::move(m), std::move(pivots)};
}

inline Rational determinant(const RationalMatrix& m) {
  if (m.rows() != m.cols()) throw std::invalid_argument("determinant of a non-square matrix");
  RationalMatrix a = m;
  Rational det = 1;
  const std::size_t n = a.rows();
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    while (pivot < n && sgn(a(pivot, col)) == 0) ++pivot;
    if (pivot == n) return 0;
    if (pivot != col) {
      for (std::size_t c = 0; c < n; ++c) std::swap(a(col, c), a(pivot, c));
      det = -det;
    }
    det *= a(col, col);
    for (std::size_t r = col + 1; r < n; ++r) {
      if (sgn(a(r, col)) == 0) continue;
      const Rational factor = a(r, col) / a(col, col);
      for (std::size_t c = col; c < n; ++c) a(r, c) -= factor * a(col, c);
    }
  }
  return det;
}

inline std::optional<RationalMatrix> inverse(const RationalMatrix& m) {
  if (m.rows() != m.cols()) throw std::invalid_argument("inverse of a non-square matrix");
  const std::size_t n = m.rows();
  const EchelonForm ef = row_reduce(m.augmented(RationalMatrix::identity(n)));
  if (ef.pivot_columns.size() < n || ef.pivot_columns[n - 1] != n - 1) return std::nullopt;
  RationalMatrix out(n, n);
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = 0; c < n; ++c) out(r, c) = ef.reduced(r, n + c);
  return out;
}

/// Basis of {v : m v = 0}, one vector per free column, ordered by column.
inline std::vector<std::vector<Rational>> nullspace(const RationalMatrix& m) {
  const EchelonForm ef = row_reduce(m);
  std::vector<bool> is_pivot(m.cols(), false);
  for (auto c : ef.pivot_columns) is_pivot[c] = true;
  std::vector<std::vector<Rational>> basis;
  for (std::size_t free = 0; free < m.cols(); ++free) {
    if (is_pivot[free]) continue;
    std::vector<Rational> v(m.cols());
    v[free] = 1;
    for (std::size_t i = 0; i < ef.pivot_columns.size(); ++i) v[ef.pivot_columns[i]] = -ef.reduced(i, free);
    basis.push_back(std::move(v));
  }
  return basis;
}

/// Unique solution of m x = rhs for square nonsingular m; nullopt when m is
/// singular or the system is inconsistent.
inline std::optional<std::vector<Rational>> solve(const RationalMatrix& m, const std::vector<Rational>& rhs) {
  if (rhs.size() != m.rows()) throw std::invalid_argument("right-hand side length mismatch");
  RationalMatrix rhs_col(m.rows(), 1);
  rhs_col.set_column(0, rhs);
  const EchelonForm ef = row_reduce(m.augmented(rhs_col));
  if (ef.pivot_columns.size() != m.cols()) return std::nullopt;
  for (std::size_t i = 0; i < m.cols(); ++i)
    if (ef.pivot_columns[i] != i) return std::nullopt;
  for (std::size_t r = m.cols(); r < m.rows(); ++r)
    if (sgn(ef.reduced(r, m.cols())) != 0) return std::nullopt;
  std::vector<Rational> x(m.cols());
  for (std::size_t i = 0; i < m.cols(); ++i) x[i] = ef.reduced(i, m.cols());
  return x;
}

/// Exact rank by fraction-free (Bareiss) elimination. Rows are first scaled
/// to integers; nonzero row scaling does not change the rank.
inline std::size_t rank_bareiss(const RationalMatrix& m) {
  const std::size_t rows = m.rows(), cols = m.cols();
  std::vector<Integer> a(rows * cols);
  for (std::size_t r = 0; r < rows; ++r) {
    Integer lcm = 1;
    for (std::size_t c = 0; c < cols; ++c) mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), m(r, c).get_den_mpz_t());
    for (std::size_t c = 0; c < cols; ++c) a[r * cols + c] = m(r, c).get_num() * (lcm / m(r, c).get_den());
  }
  auto at = [&](std::size_t r, std::size_t c) -> Integer& { return a[r * cols + c]; };
  Integer prev = 1;
  std::size_t rank = 0;
  Integer t;
  for (std::size_t col = 0; col < cols && rank < rows; ++col) {
    std::size_t pivot = rank;
    while (pivot < rows && sgn(at(pivot, col)) == 0) ++pivot;
    if (pivot == rows) continue;
    if (pivot != rank)
      for (std::size_t c = 0; c < cols; ++c) std::swap(at(rank, c), at(pivot, c));
    for (std::size_t r = rank + 1; r < rows; ++r) {
      for (std::size_t c = col + 1; c < cols; ++c) {
        // a[r][c] = (p * a[r][c] - a[r][col] * a[rank][c]) / prev, exact.
        t = at(rank, col) * at(r, c);
        t -= at(r, col) * at(rank, c);
        mpz_divexact(at(r, c).get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
      }
      at(r, col) = 0;
    }
    prev = at(rank, col);
    ++rank;
  }
  return rank;
}

/// Rank of m reduced modulo the prime p (p < 2^32). Returns nullopt when some
/// denominator vanishes mod p, i.e. p is unusable for this matrix.
inline std::optional<std::size_t> rank_mod_p(const RationalMatrix& m, std::uint64_t p) {
  const std::size_t rows = m.rows(), cols = m.cols();
  std::vector<std::uint64_t> a(rows * cols);
  const Integer pz(static_cast<unsigned long>(p));
  Integer num, den, inv;
  for (std::size_t r = 0; r < rows; ++r)
    for (std::size_t c = 0; c < cols; ++c) {
      const Rational& q = m(r, c);
      if (sgn(q) == 0) continue;
      mpz_mod(num.get_mpz_t(), q.get_num_mpz_t(), pz.get_mpz_t());
      mpz_mod(den.get_mpz_t(), q.get_den_mpz_t(), pz.get_mpz_t());
      if (den == 0) return std::nullopt;
      mpz_invert(inv.get_mpz_t(), den.get_mpz_t(), pz.get_mpz_t());
      a[r * cols + c] = (num.get_ui() * inv.get_ui()) % p;
    }
  auto mulmod = [p](std::uint64_t x, std::uint64_t y) { return (x * y) % p; };
  auto powmod = [&](std::uint64_t b, std::uint64_t e) {
    std::uint64_t out = 1;
    while (e) {
      if (e & 1) out = mulmod(out, b);
      b = mulmod(b, b);
      e >>= 1;
    }
    return out;
  };
  std::size_t rank = 0;
  for (std::size_t col = 0; col < cols && rank < rows; ++col) {
    std::size_t pivot = rank;
    while (pivot < rows && a[pivot * cols + col] == 0) ++pivot;
    if (pivot == rows) continue;
    if (pivot != rank)
      for (std::size_t c = 0; c < cols; ++c) std::swap(a[rank * cols + c], a[pivot * cols + c]);
    const std::uint64_t inv_pivot = powmod(a[rank * cols + col], p - 2);
    for (std::size_t r = rank + 1; r < rows; ++r) {
      const std::uint64_t entry = a[r * cols + col];
      if (entry == 0) continue;
      const std::uint64_t factor = mulmod(entry, inv_pivot);
      for (std::size_t c = col; c < cols; ++c) {
        const std::uint64_t sub = mulmod(factor, a[rank * cols + c]);
        a[r * cols + c] = (a[r * cols + c] + p - sub) % p;
      }
    }
    ++rank;
  }
  return rank;
}

/// The first `count` primes above 2^30, from GMP's next-prime search.
inline std::vector<std::uint64_t> probe_primes(std::size_t count) {
  std::vector<std::uint64_t> out;
  Integer p = Integer(1) << 30;
  while (out.size() < count) {
    mpz_nextprime(p.get_mpz_t(), p.get_mpz_t());
    out.push_back(p.get_ui());
  }
  return out;
}

}  // namespace hessmap
