#pragma once

#include <algorithm>
#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "apolar/errors.hpp"
#include "apolar/rational.hpp"

namespace apolar {

using RationalVector = std::vector<Rational>;

/// Reduced row echelon form built one row at a time.
///
/// Rows are kept fully reduced and sorted by pivot column, so after any
/// sequence of insertions rows() is the unique RREF of the inserted span.
/// Evaluation matrices in this library have many more rows than their rank,
/// and inserting row by row keeps the working set at rank size.
class IncrementalEchelon {
 public:
  explicit IncrementalEchelon(std::size_t cols) : cols_(cols) {}

  std::size_t cols() const noexcept { return cols_; }
  std::size_t rank() const noexcept { return rows_.size(); }
  const std::vector<RationalVector>& rows() const noexcept { return rows_; }
  const std::vector<std::size_t>& pivots() const noexcept { return pivots_; }

  RationalVector reduce(RationalVector v) const {
    check_width(v.size());
    for (std::size_t r = 0; r < rows_.size(); ++r) {
      const Rational c = v[pivots_[r]];
      if (c == 0) continue;
      const RationalVector& row = rows_[r];
      for (std::size_t j = pivots_[r]; j < cols_; ++j)
        if (row[j] != 0) v[j] -= c * row[j];
    }
    return v;
  }

  bool contains(std::span<const Rational> v) const {
    RationalVector r = reduce(RationalVector(v.begin(), v.end()));
    return std::all_of(r.begin(), r.end(), [](const Rational& x) { return x == 0; });
  }

  /// Returns true when the row enlarged the span.
  bool insert(RationalVector v) {
    v = reduce(std::move(v));
    std::size_t p = 0;
    while (p < cols_ && v[p] == 0) ++p;
    if (p == cols_) return false;
    const Rational lead = v[p];
    for (std::size_t j = p; j < cols_; ++j)
      if (v[j] != 0) v[j] /= lead;
    for (auto& row : rows_) {
      const Rational c = row[p];
      if (c == 0) continue;
      for (std::size_t j = p; j < cols_; ++j)
        if (v[j] != 0) row[j] -= c * v[j];
    }
    const auto pos = std::lower_bound(pivots_.begin(), pivots_.end(), p) - pivots_.begin();
    pivots_.insert(pivots_.begin() + pos, p);
    rows_.insert(rows_.begin() + pos, std::move(v));
    return true;
  }

  /// Kernel of the row space viewed as a linear map, returned in RREF
  /// (each basis vector has leading entry 1).
  std::vector<RationalVector> kernel() const {
    std::vector<bool> is_pivot(cols_, false);
    for (auto p : pivots_) is_pivot[p] = true;
    IncrementalEchelon basis(cols_);
    for (std::size_t f = 0; f < cols_; ++f) {
      if (is_pivot[f]) continue;
      RationalVector v(cols_);
      v[f] = 1;
      for (std::size_t r = 0; r < rows_.size(); ++r) v[pivots_[r]] = -rows_[r][f];
      basis.insert(std::move(v));
    }
    return basis.rows_;
  }

 private:
  void check_width(std::size_t n) const {
    if (n != cols_) throw InputError("row width does not match echelon width");
  }

  std::size_t cols_;
  std::vector<RationalVector> rows_;
  std::vector<std::size_t> pivots_;
};

/// Dense matrix over the rationals with exact rank, kernel and solve.
class ExactMatrix {
 public:
  ExactMatrix() = default;
  ExactMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

  static ExactMatrix identity(std::size_t n) {
    ExactMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
    return m;
  }

  static ExactMatrix from_rows(const std::vector<RationalVector>& rows) {
    const std::size_t c = rows.empty() ? 0 : rows.front().size();
    ExactMatrix m(rows.size(), c);
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (rows[i].size() != c) throw InputError("ragged matrix rows");
      for (std::size_t j = 0; j < c; ++j) m(i, j) = rows[i][j];
    }
    return m;
  }

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }

  Rational& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const Rational& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  RationalVector row(std::size_t r) const {
    return RationalVector(data_.begin() + r * cols_, data_.begin() + (r + 1) * cols_);
  }

  RationalVector column(std::size_t c) const {
    RationalVector v(rows_);
    for (std::size_t r = 0; r < rows_; ++r) v[r] = (*this)(r, c);
    return v;
  }

  ExactMatrix transpose() const {
    ExactMatrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
  }

  ExactMatrix operator*(const ExactMatrix& o) const {
    if (cols_ != o.rows_) throw InputError("matrix product dimension mismatch");
    ExactMatrix p(rows_, o.cols_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t k = 0; k < cols_; ++k) {
        const Rational& a = (*this)(i, k);
        if (a == 0) continue;
        for (std::size_t j = 0; j < o.cols_; ++j) p(i, j) += a * o(k, j);
      }
    return p;
  }

  RationalVector apply(std::span<const Rational> x) const {
    if (x.size() != cols_) throw InputError("matrix-vector dimension mismatch");
    RationalVector y(rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j)
        if ((*this)(i, j) != 0) y[i] += (*this)(i, j) * x[j];
    return y;
  }

  bool operator==(const ExactMatrix& o) const {
    return rows_ == o.rows_ && cols_ == o.cols_ && data_ == o.data_;
  }

  IncrementalEchelon echelon() const {
    IncrementalEchelon e(cols_);
    for (std::size_t r = 0; r < rows_; ++r) e.insert(row(r));
    return e;
  }

  /// Reduced row echelon form, zero rows dropped.
  ExactMatrix rref() const { return from_rows_or_empty(echelon().rows(), cols_); }

  std::size_t rank() const { return echelon().rank(); }

  /// Basis of {x : A x = 0} in reduced row echelon form.
  std::vector<RationalVector> kernel() const { return echelon().kernel(); }

  /// One solution of A x = b (free variables set to zero), or nullopt if inconsistent.
  std::optional<RationalVector> solve(std::span<const Rational> b) const {
    if (b.size() != rows_) throw InputError("right-hand side has wrong length");
    IncrementalEchelon e(cols_ + 1);
    for (std::size_t r = 0; r < rows_; ++r) {
      RationalVector v = row(r);
      v.push_back(b[r]);
      e.insert(std::move(v));
    }
    RationalVector x(cols_);
    for (std::size_t r = 0; r < e.rank(); ++r) {
      const std::size_t p = e.pivots()[r];
      if (p == cols_) return std::nullopt;
      x[p] = e.rows()[r][cols_];
    }
    return x;
  }

  Rational determinant() const {
    if (rows_ != cols_) throw InputError("determinant of a non-square matrix");
    std::vector<Rational> a = data_;
    const std::size_t n = rows_;
    Rational det = 1;
    for (std::size_t c = 0; c < n; ++c) {
      std::size_t best = n;
      for (std::size_t r = c; r < n; ++r) {
        if (a[r * n + c] == 0) continue;
        if (best == n || height_bits(a[r * n + c]) < height_bits(a[best * n + c])) best = r;
      }
      if (best == n) return 0;
      if (best != c) {
        for (std::size_t j = 0; j < n; ++j) std::swap(a[c * n + j], a[best * n + j]);
        det = -det;
      }
      const Rational piv = a[c * n + c];
      det *= piv;
      for (std::size_t r = c + 1; r < n; ++r) {
        if (a[r * n + c] == 0) continue;
        const Rational f = a[r * n + c] / piv;
        for (std::size_t j = c; j < n; ++j) a[r * n + j] -= f * a[c * n + j];
      }
    }
    return det;
  }

  std::optional<ExactMatrix> inverse() const {
    if (rows_ != cols_) throw InputError("inverse of a non-square matrix");
    const std::size_t n = rows_;
    IncrementalEchelon e(2 * n);
    for (std::size_t r = 0; r < n; ++r) {
      RationalVector v = row(r);
      v.resize(2 * n);
      v[n + r] = 1;
      e.insert(std::move(v));
    }
    for (std::size_t r = 0; r < n; ++r)
      if (e.rank() != n || e.pivots()[r] != r) return std::nullopt;
    ExactMatrix inv(n, n);
    for (std::size_t r = 0; r < n; ++r)
      for (std::size_t j = 0; j < n; ++j) inv(r, j) = e.rows()[r][n + j];
    return inv;
  }

 private:
  static ExactMatrix from_rows_or_empty(const std::vector<RationalVector>& rows, std::size_t cols) {
    if (rows.empty()) return ExactMatrix(0, cols);
    return from_rows(rows);
  }

  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Rational> data_;
};

}  // namespace apolar
