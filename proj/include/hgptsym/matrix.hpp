#pragma once

// Small dense matrices over an exact or floating scalar, with the row
// reduction the invariant-subspace algorithms are built on. Eigen is used
// for the floating-only work (SVD, complex arithmetic); this type exists so
// that the same elimination code runs over mpq_class.

#include <Eigen/Dense>

#include <algorithm>
#include <array>
#include <cstddef>
#include <vector>

#include "hgptsym/scalar.hpp"

namespace hgptsym {

template <class T>
using Mat3 = std::array<std::array<T, 3>, 3>;

template <class T>
Mat3<T> mat3_identity() {
  Mat3<T> m{};
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j) m[i][j] = T(i == j ? 1 : 0);
  return m;
}

template <class T>
Mat3<T> operator*(const Mat3<T>& a, const Mat3<T>& b) {
  Mat3<T> c{};
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j) {
      T s = T(0);
      for (std::size_t k = 0; k < 3; ++k) s += a[i][k] * b[k][j];
      c[i][j] = s;
    }
  return c;
}

template <class T>
Mat3<T> transpose(const Mat3<T>& a) {
  Mat3<T> t{};
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j) t[i][j] = a[j][i];
  return t;
}

template <class T>
std::array<T, 3> apply(const Mat3<T>& a, const std::array<T, 3>& v) {
  std::array<T, 3> r{};
  for (std::size_t i = 0; i < 3; ++i) r[i] = a[i][0] * v[0] + a[i][1] * v[1] + a[i][2] * v[2];
  return r;
}

template <class T>
T determinant(const Mat3<T>& a) {
  return a[0][0] * (a[1][1] * a[2][2] - a[1][2] * a[2][1]) -
         a[0][1] * (a[1][0] * a[2][2] - a[1][2] * a[2][0]) +
         a[0][2] * (a[1][0] * a[2][1] - a[1][1] * a[2][0]);
}

inline double max_abs_difference(const Mat3<double>& a, const Mat3<double>& b) {
  double d = 0.0;
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j) d = std::max(d, std::abs(a[i][j] - b[i][j]));
  return d;
}

template <class T>
Mat3<double> to_double(const Mat3<T>& a) {
  Mat3<double> r{};
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j) r[i][j] = ScalarTraits<T>::to_double(a[i][j]);
  return r;
}

/// Row-major dense matrix.
template <class T>
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

  Matrix operator*(const Matrix& o) const {
    if (cols_ != o.rows_) throw Error("matrix product: dimension mismatch");
    Matrix r(rows_, o.cols_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t k = 0; k < cols_; ++k) {
        const T& a = (*this)(i, k);
        if (ScalarTraits<T>::is_zero(a)) continue;
        for (std::size_t j = 0; j < o.cols_; ++j) r(i, j) += a * o(k, j);
      }
    return r;
  }

  Matrix& operator+=(const Matrix& o) {
    if (rows_ != o.rows_ || cols_ != o.cols_) throw Error("matrix sum: dimension mismatch");
    for (std::size_t k = 0; k < data_.size(); ++k) data_[k] += o.data_[k];
    return *this;
  }

  Matrix operator-(const Matrix& o) const {
    if (rows_ != o.rows_ || cols_ != o.cols_) throw Error("matrix difference: dimension mismatch");
    Matrix r = *this;
    for (std::size_t k = 0; k < data_.size(); ++k) r.data_[k] -= o.data_[k];
    return r;
  }

  Matrix& operator*=(const T& s) {
    for (auto& v : data_) v *= s;
    return *this;
  }

  Matrix transpose() const {
    Matrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
  }

  T trace() const {
    T s = T(0);
    for (std::size_t i = 0; i < std::min(rows_, cols_); ++i) s += (*this)(i, i);
    return s;
  }

  std::vector<T> row(std::size_t i) const {
    return std::vector<T>(data_.begin() + static_cast<std::ptrdiff_t>(i * cols_),
                          data_.begin() + static_cast<std::ptrdiff_t>((i + 1) * cols_));
  }

  bool operator==(const Matrix& o) const = default;

  Eigen::MatrixXd to_eigen() const {
    Eigen::MatrixXd m(rows_, cols_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) m(i, j) = ScalarTraits<T>::to_double((*this)(i, j));
    return m;
  }

  double max_abs() const {
    double m = 0.0;
    for (const auto& v : data_) m = std::max(m, std::abs(ScalarTraits<T>::to_double(v)));
    return m;
  }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<T> data_;
};

template <class T>
struct Echelon {
  Matrix<T> reduced;
  std::vector<std::size_t> pivots;  // pivot column of each leading row
};

/// Reduced row echelon form. Only the first `pivot_cols` columns are eligible
/// as pivots (defaults to all), which lets callers reduce augmented systems.
/// Floating pivots smaller than `tol * max(1, max|entry|)` count as zero.
template <class T>
Echelon<T> rref(Matrix<T> m, double tol, std::size_t pivot_cols = static_cast<std::size_t>(-1)) {
  using Tr = ScalarTraits<T>;
  const std::size_t rows = m.rows();
  const std::size_t cols = m.cols();
  pivot_cols = std::min(pivot_cols, cols);
  const double thresh = Tr::exact ? 0.0 : tol * std::max(1.0, m.max_abs());
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  for (std::size_t c = 0; c < pivot_cols && r < rows; ++c) {
    std::size_t best = rows;
    if constexpr (Tr::exact) {
      for (std::size_t i = r; i < rows; ++i)
        if (!Tr::is_zero(m(i, c))) {
          best = i;
          break;
        }
    } else {
      double best_abs = thresh;
      for (std::size_t i = r; i < rows; ++i) {
        const double a = std::abs(Tr::to_double(m(i, c)));
        if (a > best_abs) {
          best_abs = a;
          best = i;
        }
      }
    }
    if (best == rows) {
      if constexpr (!Tr::exact)
        for (std::size_t i = r; i < rows; ++i) m(i, c) = T(0);
      continue;
    }
    if (best != r)
      for (std::size_t j = 0; j < cols; ++j) std::swap(m(r, j), m(best, j));
    const T inv = T(1) / m(r, c);
    for (std::size_t j = c; j < cols; ++j) m(r, j) *= inv;
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == r || Tr::is_zero(m(i, c))) continue;
      const T f = m(i, c);
      for (std::size_t j = c; j < cols; ++j) m(i, j) -= f * m(r, j);
      m(i, c) = T(0);
    }
    pivots.push_back(c);
    ++r;
  }
  return {std::move(m), std::move(pivots)};
}

template <class T>
std::size_t rank(const Matrix<T>& m, double tol) {
  return rref(m, tol).pivots.size();
}

/// Basis of the right null space, one vector per free column.
template <class T>
std::vector<std::vector<T>> null_space(const Matrix<T>& m, double tol) {
  const auto ech = rref(m, tol);
  std::vector<bool> is_pivot(m.cols(), false);
  for (auto c : ech.pivots) is_pivot[c] = true;
  std::vector<std::vector<T>> basis;
  for (std::size_t f = 0; f < m.cols(); ++f) {
    if (is_pivot[f]) continue;
    std::vector<T> v(m.cols(), T(0));
    v[f] = T(1);
    for (std::size_t r = 0; r < ech.pivots.size(); ++r) v[ech.pivots[r]] = -ech.reduced(r, f);
    basis.push_back(std::move(v));
  }
  return basis;
}

/// Expresses vectors in the column span of a fixed full-column-rank matrix B.
/// The reduction of [B | I] is computed once, so each solve is a
/// matrix-vector product plus a consistency check.
template <class T>
class SpanSolver {
 public:
  explicit SpanSolver(const Matrix<T>& basis) : n_(basis.rows()), d_(basis.cols()) {
    Matrix<T> aug(n_, d_ + n_);
    for (std::size_t i = 0; i < n_; ++i) {
      for (std::size_t j = 0; j < d_; ++j) aug(i, j) = basis(i, j);
      aug(i, d_ + i) = T(1);
    }
    auto ech = rref(aug, tolerances().rank, d_);
    if (ech.pivots.size() != d_) throw Error("basis vectors are linearly dependent");
    transform_ = Matrix<T>(n_, n_);
    for (std::size_t i = 0; i < n_; ++i)
      for (std::size_t j = 0; j < n_; ++j) transform_(i, j) = ech.reduced(i, d_ + j);
    basis_ = basis;
  }

  std::size_t dimension() const { return d_; }
  std::size_t ambient() const { return n_; }

  /// Coordinates of `v` in the basis; throws when `v` is not in the span.
  std::vector<T> solve(const std::vector<T>& v) const {
    if (v.size() != n_) throw Error("span solve: dimension mismatch");
    std::vector<T> coords(d_, T(0));
    for (std::size_t i = 0; i < d_; ++i) {
      T s = T(0);
      for (std::size_t j = 0; j < n_; ++j)
        if (!ScalarTraits<T>::is_zero(v[j])) s += transform_(i, j) * v[j];
      coords[i] = s;
    }
    // Residual of B * coords against v.
    double scale = 1.0;
    for (const auto& x : v) scale = std::max(scale, std::abs(ScalarTraits<T>::to_double(x)));
    for (std::size_t i = 0; i < n_; ++i) {
      T s = T(0);
      for (std::size_t j = 0; j < d_; ++j) s += basis_(i, j) * coords[j];
      s -= v[i];
      if constexpr (ScalarTraits<T>::exact) {
        if (!ScalarTraits<T>::is_zero(s)) throw Error("vector is not in the span of the basis");
      } else {
        if (std::abs(s) > tolerances().span_residual * scale)
          throw Error("vector is not in the span of the basis (residual " +
                      std::to_string(std::abs(s)) + ")");
      }
    }
    return coords;
  }

 private:
  std::size_t n_;
  std::size_t d_;
  Matrix<T> transform_;
  Matrix<T> basis_;
};

}  // namespace hgptsym
