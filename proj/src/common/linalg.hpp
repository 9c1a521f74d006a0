#pragma once

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "common/error.hpp"
#include "common/rational.hpp"

namespace gformal {

// Dense row-major matrix over an exact or float field.
template <typename T>
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols, T(0)) {}

  static Matrix identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = T(1);
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  T& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const T& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  Matrix transpose() const {
    Matrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
  }

  Matrix operator*(const Matrix& o) const {
    require(cols_ == o.rows_, ErrorCode::DimensionMismatch, "matrix product shape mismatch");
    Matrix r(rows_, o.cols_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t k = 0; k < cols_; ++k) {
        const T& a = (*this)(i, k);
        if (ScalarTraits<T>::zero(a)) continue;
        for (std::size_t j = 0; j < o.cols_; ++j) r(i, j) += a * o(k, j);
      }
    return r;
  }

  std::vector<T> apply(const std::vector<T>& v) const {
    require(v.size() == cols_, ErrorCode::DimensionMismatch, "matrix-vector shape mismatch");
    std::vector<T> r(rows_, T(0));
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) r[i] += (*this)(i, j) * v[j];
    return r;
  }

  std::vector<T> row(std::size_t i) const {
    return std::vector<T>(data_.begin() + i * cols_, data_.begin() + (i + 1) * cols_);
  }
  std::vector<T> column(std::size_t j) const {
    std::vector<T> c(rows_);
    for (std::size_t i = 0; i < rows_; ++i) c[i] = (*this)(i, j);
    return c;
  }

  // Stacks `o` below this matrix.
  Matrix vstack(const Matrix& o) const {
    if (rows_ == 0) return o;
    if (o.rows_ == 0) return *this;
    require(cols_ == o.cols_, ErrorCode::DimensionMismatch, "vstack column mismatch");
    Matrix r(rows_ + o.rows_, cols_);
    std::copy(data_.begin(), data_.end(), r.data_.begin());
    std::copy(o.data_.begin(), o.data_.end(), r.data_.begin() + data_.size());
    return r;
  }

  bool is_zero() const {
    for (const T& x : data_)
      if (!ScalarTraits<T>::zero(x)) return false;
    return true;
  }

  bool operator==(const Matrix& o) const {
    return rows_ == o.rows_ && cols_ == o.cols_ && data_ == o.data_;
  }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<T> data_;
};

using QMatrix = Matrix<Rational>;
using QVector = std::vector<Rational>;

template <typename T>
struct Echelon {
  Matrix<T> reduced;                // reduced row echelon form (zero rows dropped)
  std::vector<std::size_t> pivots;  // pivot column of each nonzero row
};

namespace detail {
inline bool negligible(const Rational& q, double) { return sgn(q) == 0; }
inline bool negligible(double x, double tol) { return std::fabs(x) <= tol; }
inline double magnitude(const Rational& q) { return std::fabs(q.get_d()); }
inline double magnitude(double x) { return std::fabs(x); }
}  // namespace detail

// Gauss-Jordan elimination. Exact for Rational; partial pivoting with a
// relative tolerance for double.
template <typename T>
Echelon<T> rref(Matrix<T> m, double tol = 1e-12) {
  const std::size_t rows = m.rows(), cols = m.cols();
  double scale = 0.0;
  if constexpr (!ScalarTraits<T>::exact) {
    for (std::size_t i = 0; i < rows; ++i)
      for (std::size_t j = 0; j < cols; ++j) scale = std::max(scale, detail::magnitude(m(i, j)));
  }
  const double eps = tol * std::max(scale, 1.0);
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t best = rows;
    double best_mag = 0.0;
    for (std::size_t i = r; i < rows; ++i) {
      if (detail::negligible(m(i, c), eps)) continue;
      if constexpr (ScalarTraits<T>::exact) {
        best = i;
        break;
      } else {
        double mag = detail::magnitude(m(i, c));
        if (mag > best_mag) {
          best_mag = mag;
          best = i;
        }
      }
    }
    if (best == rows) continue;
    if (best != r)
      for (std::size_t j = 0; j < cols; ++j) std::swap(m(r, j), m(best, j));
    T inv = T(1) / m(r, c);
    for (std::size_t j = c; j < cols; ++j) m(r, j) *= inv;
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == r || detail::negligible(m(i, c), 0.0)) continue;
      T f = m(i, c);
      for (std::size_t j = c; j < cols; ++j) m(i, j) -= f * m(r, j);
    }
    pivots.push_back(c);
    ++r;
  }
  Matrix<T> reduced(r, cols);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < cols; ++j) reduced(i, j) = m(i, j);
  return {std::move(reduced), std::move(pivots)};
}

template <typename T>
std::size_t rank(const Matrix<T>& m, double tol = 1e-12) {
  return rref(m, tol).pivots.size();
}

// Basis of the right nullspace. Each vector has a 1 in its own free column
// and 0 in every other free column.
template <typename T>
std::vector<std::vector<T>> nullspace(const Matrix<T>& m, double tol = 1e-12) {
  auto e = rref(m, tol);
  std::vector<bool> is_pivot(m.cols(), false);
  for (auto p : e.pivots) is_pivot[p] = true;
  std::vector<std::vector<T>> basis;
  for (std::size_t f = 0; f < m.cols(); ++f) {
    if (is_pivot[f]) continue;
    std::vector<T> v(m.cols(), T(0));
    v[f] = T(1);
    for (std::size_t i = 0; i < e.pivots.size(); ++i) v[e.pivots[i]] = -e.reduced(i, f);
    basis.push_back(std::move(v));
  }
  return basis;
}

template <typename T>
T determinant(Matrix<T> m) {
  require(m.rows() == m.cols(), ErrorCode::DimensionMismatch, "determinant of a non-square matrix");
  const std::size_t n = m.rows();
  T det(1);
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = n;
    double best = 0.0;
    for (std::size_t i = c; i < n; ++i) {
      if (ScalarTraits<T>::zero(m(i, c))) continue;
      if constexpr (ScalarTraits<T>::exact) {
        p = i;
        break;
      } else if (detail::magnitude(m(i, c)) > best) {
        best = detail::magnitude(m(i, c));
        p = i;
      }
    }
    if (p == n) return T(0);
    if (p != c) {
      for (std::size_t j = 0; j < n; ++j) std::swap(m(c, j), m(p, j));
      det = -det;
    }
    det *= m(c, c);
    T inv = T(1) / m(c, c);
    for (std::size_t i = c + 1; i < n; ++i) {
      if (ScalarTraits<T>::zero(m(i, c))) continue;
      T f = m(i, c) * inv;
      for (std::size_t j = c; j < n; ++j) m(i, j) -= f * m(c, j);
    }
  }
  return det;
}

template <typename T>
std::optional<Matrix<T>> inverse(const Matrix<T>& m) {
  require(m.rows() == m.cols(), ErrorCode::DimensionMismatch, "inverse of a non-square matrix");
  const std::size_t n = m.rows();
  Matrix<T> aug(n, 2 * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) aug(i, j) = m(i, j);
    aug(i, n + i) = T(1);
  }
  auto e = rref(aug);
  if (e.pivots.size() < n || e.pivots[n - 1] != n - 1) return std::nullopt;
  Matrix<T> inv(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) inv(i, j) = e.reduced(i, n + j);
  return inv;
}

// Some solution of m x = b, or nullopt when inconsistent.
template <typename T>
std::optional<std::vector<T>> solve(const Matrix<T>& m, const std::vector<T>& b) {
  require(b.size() == m.rows(), ErrorCode::DimensionMismatch, "solve: right-hand side length");
  Matrix<T> aug(m.rows(), m.cols() + 1);
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j) aug(i, j) = m(i, j);
    aug(i, m.cols()) = b[i];
  }
  auto e = rref(aug);
  std::vector<T> x(m.cols(), T(0));
  for (std::size_t i = 0; i < e.pivots.size(); ++i) {
    if (e.pivots[i] == m.cols()) return std::nullopt;
    x[e.pivots[i]] = e.reduced(i, m.cols());
  }
  return x;
}

// Leading principal minors, all strictly positive.
bool positive_definite(const QMatrix& m);

// --- Sparse exact kernels ---------------------------------------------------

// Sparse vector: strictly increasing indices, no stored zeros.
using SparseVec = std::vector<std::pair<std::uint32_t, Rational>>;

SparseVec sparse_add_scaled(const SparseVec& a, const SparseVec& b, const Rational& s);

// Kernel of the linear map whose j-th column is `columns[j]` (row indices
// below `rows`). Returned vectors are indexed by column and normalized like
// `nullspace`: vector t has entry 1 at free column free_columns[t] and 0 at
// every other free column.
struct SparseKernel {
  std::vector<SparseVec> basis;
  std::vector<std::uint32_t> free_columns;
};

SparseKernel sparse_nullspace(const std::vector<SparseVec>& columns, std::size_t rows);

}  // namespace gformal
