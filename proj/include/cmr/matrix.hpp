#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "cmr/errors.hpp"
#include "cmr/scalar.hpp"

namespace cmr {

/// Dense row-major matrix over Complex or GaussRational.
///
/// gl_n elements are n×n instances; elements of gl_n⊗gl_n and gl_n⊗gl_n⊗gl_n
/// are the n²×n² and n³×n³ Kronecker images (see tensor.hpp).
template <class S>
class Matrix {
public:
  using Scalar = S;
  using Traits = ScalarTraits<S>;

  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

  static Matrix zero(std::size_t n) { return Matrix(n, n); }
  static Matrix identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = Traits::from_int(1);
    return m;
  }
  static Matrix diagonal(const std::vector<S>& d) {
    Matrix m(d.size(), d.size());
    for (std::size_t i = 0; i < d.size(); ++i) m(i, i) = d[i];
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool square() const { return rows_ == cols_; }

  S& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const S& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  const std::vector<S>& data() const { return data_; }

  Matrix& operator+=(const Matrix& o) {
    require_same_shape(o);
    for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += o.data_[i];
    return *this;
  }
  Matrix& operator-=(const Matrix& o) {
    require_same_shape(o);
    for (std::size_t i = 0; i < data_.size(); ++i) data_[i] -= o.data_[i];
    return *this;
  }
  Matrix& operator*=(const S& s) {
    for (auto& x : data_) x *= s;
    return *this;
  }

  friend Matrix operator+(Matrix a, const Matrix& b) { return a += b; }
  friend Matrix operator-(Matrix a, const Matrix& b) { return a -= b; }
  friend Matrix operator-(Matrix a) { return a *= Traits::from_int(-1); }
  friend Matrix operator*(Matrix a, const S& s) { return a *= s; }
  friend Matrix operator*(const S& s, Matrix a) { return a *= s; }

  friend Matrix operator*(const Matrix& a, const Matrix& b) {
    if (a.cols_ != b.rows_) throw ArgumentError("matrix product: inner dimensions differ");
    Matrix c(a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i) {
      for (std::size_t k = 0; k < a.cols_; ++k) {
        const S& aik = a(i, k);
        if (Traits::is_zero(aik)) continue;
        for (std::size_t j = 0; j < b.cols_; ++j) {
          const S& bkj = b(k, j);
          if (Traits::is_zero(bkj)) continue;
          c(i, j) += aik * bkj;
        }
      }
    }
    return c;
  }

  friend bool operator==(const Matrix& a, const Matrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }

  Matrix transpose() const {
    Matrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
  }

  Matrix adjoint() const {
    Matrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) t(j, i) = Traits::conj((*this)(i, j));
    return t;
  }

  S trace() const {
    require_square("trace");
    S t{};
    for (std::size_t i = 0; i < rows_; ++i) t += (*this)(i, i);
    return t;
  }

  bool is_zero() const {
    return std::all_of(data_.begin(), data_.end(), [](const S& x) { return Traits::is_zero(x); });
  }

  /// Gauss-Jordan elimination. Float mode pivots on the largest magnitude and
  /// rejects pivots below 1e-300; exact mode only rejects true zeros.
  Matrix inverse() const {
    require_square("inverse");
    const std::size_t n = rows_;
    Matrix a = *this;
    Matrix inv = identity(n);
    for (std::size_t col = 0; col < n; ++col) {
      std::size_t piv = col;
      double best = -1.0;
      for (std::size_t r = col; r < n; ++r) {
        if (Traits::is_zero(a(r, col))) continue;
        const double m = Traits::magnitude(a(r, col));
        if (m > best) {
          best = m;
          piv = r;
          if constexpr (Traits::exact) break;
        }
      }
      if (best <= 0.0 || (!Traits::exact && best < 1e-300))
        throw SingularMatrixError("matrix inverse: singular matrix");
      if (piv != col) {
        for (std::size_t j = 0; j < n; ++j) {
          std::swap(a(col, j), a(piv, j));
          std::swap(inv(col, j), inv(piv, j));
        }
      }
      const S p = a(col, col);
      for (std::size_t j = 0; j < n; ++j) {
        a(col, j) /= p;
        inv(col, j) /= p;
      }
      for (std::size_t r = 0; r < n; ++r) {
        if (r == col || Traits::is_zero(a(r, col))) continue;
        const S f = a(r, col);
        for (std::size_t j = 0; j < n; ++j) {
          if (!Traits::is_zero(a(col, j))) a(r, j) -= f * a(col, j);
          if (!Traits::is_zero(inv(col, j))) inv(r, j) -= f * inv(col, j);
        }
      }
    }
    return inv;
  }

private:
  void require_same_shape(const Matrix& o) const {
    if (rows_ != o.rows_ || cols_ != o.cols_) throw ArgumentError("matrix shapes differ");
  }
  void require_square(const char* what) const {
    if (rows_ != cols_) throw ArgumentError(std::string(what) + ": matrix is not square");
  }

  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<S> data_;
};

using CMatrix = Matrix<Complex>;
using QMatrix = Matrix<GaussRational>;

template <class S>
Matrix<S> commutator(const Matrix<S>& a, const Matrix<S>& b) {
  return a * b - b * a;
}

/// Frobenius norm; in exact mode the sum of squares is formed exactly first.
template <class S>
double frobenius_norm(const Matrix<S>& m) {
  if constexpr (is_exact_v<S>) {
    Rational s = 0;
    for (const auto& x : m.data()) s += x.norm();
    return std::sqrt(s.get_d());
  } else {
    double s = 0.0;
    for (const auto& x : m.data()) s += ScalarTraits<S>::abs2(x);
    return std::sqrt(s);
  }
}

/// Frobenius norm of a − b.
template <class S>
double residual(const Matrix<S>& a, const Matrix<S>& b) {
  return frobenius_norm(a - b);
}

inline CMatrix to_complex(const QMatrix& m) {
  CMatrix c(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) c(i, j) = m(i, j).to_complex();
  return c;
}

inline CMatrix to_complex(const CMatrix& m) { return m; }

}  // namespace cmr
