#pragma once

#include <optional>
#include <stdexcept>
#include <vector>

#include "hkverify/errors.hpp"
#include "hkverify/scalar.hpp"

namespace hkverify {

using Vector = std::vector<Scalar>;

/// Dense matrix over exact rationals, 0-based, row-major.
class RationalMatrix {
 public:
  RationalMatrix() = default;
  RationalMatrix(int rows, int cols) : rows_(rows), cols_(cols), data_(static_cast<std::size_t>(rows * cols)) {}
  RationalMatrix(std::initializer_list<std::initializer_list<Scalar>> rows) {
    rows_ = static_cast<int>(rows.size());
    cols_ = rows_ == 0 ? 0 : static_cast<int>(rows.begin()->size());
    for (const auto& r : rows) {
      if (static_cast<int>(r.size()) != cols_) throw DimensionMismatch("ragged matrix literal");
      data_.insert(data_.end(), r.begin(), r.end());
    }
  }

  static RationalMatrix identity(int n) {
    RationalMatrix m(n, n);
    for (int i = 0; i < n; ++i) m(i, i) = 1;
    return m;
  }

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  bool square() const { return rows_ == cols_; }

  Scalar& operator()(int r, int c) { return data_[static_cast<std::size_t>(r * cols_ + c)]; }
  const Scalar& operator()(int r, int c) const { return data_[static_cast<std::size_t>(r * cols_ + c)]; }

  RationalMatrix transpose() const {
    RationalMatrix t(cols_, rows_);
    for (int r = 0; r < rows_; ++r)
      for (int c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
    return t;
  }

  bool is_symmetric() const {
    if (!square()) return false;
    for (int r = 0; r < rows_; ++r)
      for (int c = r + 1; c < cols_; ++c)
        if ((*this)(r, c) != (*this)(c, r)) return false;
    return true;
  }

  bool is_antisymmetric() const {
    if (!square()) return false;
    for (int r = 0; r < rows_; ++r)
      for (int c = r; c < cols_; ++c)
        if ((*this)(r, c) != -(*this)(c, r)) return false;
    return true;
  }

  bool is_zero() const {
    for (const auto& x : data_)
      if (x != 0) return false;
    return true;
  }

  Vector apply(const Vector& v) const {
    if (static_cast<int>(v.size()) != cols_) throw DimensionMismatch("matrix-vector size mismatch");
    Vector out(static_cast<std::size_t>(rows_));
    for (int r = 0; r < rows_; ++r)
      for (int c = 0; c < cols_; ++c)
        if ((*this)(r, c) != 0) out[static_cast<std::size_t>(r)] += (*this)(r, c) * v[static_cast<std::size_t>(c)];
    return out;
  }

  friend RationalMatrix operator*(const RationalMatrix& a, const RationalMatrix& b) {
    if (a.cols_ != b.rows_) throw DimensionMismatch("matrix product shape mismatch");
    RationalMatrix m(a.rows_, b.cols_);
    for (int i = 0; i < a.rows_; ++i)
      for (int k = 0; k < a.cols_; ++k) {
        if (a(i, k) == 0) continue;
        for (int j = 0; j < b.cols_; ++j) m(i, j) += a(i, k) * b(k, j);
      }
    return m;
  }
  friend RationalMatrix operator*(const Scalar& s, RationalMatrix m) {
    for (auto& x : m.data_) x *= s;
    return m;
  }
  friend RationalMatrix operator+(RationalMatrix a, const RationalMatrix& b) {
    a.check_same_shape(b);
    for (std::size_t i = 0; i < a.data_.size(); ++i) a.data_[i] += b.data_[i];
    return a;
  }
  friend RationalMatrix operator-(RationalMatrix a, const RationalMatrix& b) {
    a.check_same_shape(b);
    for (std::size_t i = 0; i < a.data_.size(); ++i) a.data_[i] -= b.data_[i];
    return a;
  }
  friend RationalMatrix operator-(RationalMatrix a) {
    for (auto& x : a.data_) x = -x;
    return a;
  }
  friend bool operator==(const RationalMatrix&, const RationalMatrix&) = default;

 private:
  void check_same_shape(const RationalMatrix& o) const {
    if (rows_ != o.rows_ || cols_ != o.cols_) throw DimensionMismatch("matrix shape mismatch");
  }

  int rows_ = 0;
  int cols_ = 0;
  std::vector<Scalar> data_;
};

inline Scalar determinant(RationalMatrix m) {
  if (!m.square()) throw DimensionMismatch("determinant of a non-square matrix");
  const int n = m.rows();
  Scalar det = 1;
  for (int col = 0; col < n; ++col) {
    int piv = col;
    while (piv < n && m(piv, col) == 0) ++piv;
    if (piv == n) return 0;
    if (piv != col) {
      for (int c = 0; c < n; ++c) std::swap(m(piv, c), m(col, c));
      det = -det;
    }
    det *= m(col, col);
    for (int r = col + 1; r < n; ++r) {
      if (m(r, col) == 0) continue;
      Scalar f = m(r, col) / m(col, col);
      for (int c = col; c < n; ++c) m(r, c) -= f * m(col, c);
    }
  }
  return det;
}

/// Gauss-Jordan inverse; nullopt when singular.
inline std::optional<RationalMatrix> inverse(const RationalMatrix& a) {
  if (!a.square()) throw DimensionMismatch("inverse of a non-square matrix");
  const int n = a.rows();
  RationalMatrix m = a;
  RationalMatrix inv = RationalMatrix::identity(n);
  for (int col = 0; col < n; ++col) {
    int piv = col;
    while (piv < n && m(piv, col) == 0) ++piv;
    if (piv == n) return std::nullopt;
    for (int c = 0; c < n; ++c) {
      std::swap(m(piv, c), m(col, c));
      std::swap(inv(piv, c), inv(col, c));
    }
    Scalar p = m(col, col);
    for (int c = 0; c < n; ++c) {
      m(col, c) /= p;
      inv(col, c) /= p;
    }
    for (int r = 0; r < n; ++r) {
      if (r == col || m(r, col) == 0) continue;
      Scalar f = m(r, col);
      for (int c = 0; c < n; ++c) {
        m(r, c) -= f * m(col, c);
        inv(r, c) -= f * inv(col, c);
      }
    }
  }
  return inv;
}

/// Positive definiteness via Sylvester's criterion on leading principal minors.
inline bool is_positive_definite(const RationalMatrix& g) {
  if (!g.is_symmetric()) return false;
  for (int k = 1; k <= g.rows(); ++k) {
    RationalMatrix minor(k, k);
    for (int r = 0; r < k; ++r)
      for (int c = 0; c < k; ++c) minor(r, c) = g(r, c);
    if (determinant(minor) <= 0) return false;
  }
  return true;
}

struct LinearSolution {
  Vector x;                ///< a particular solution; free variables set to zero
  int rank = 0;            ///< rank of the coefficient matrix
  bool consistent = true;  ///< rank(A) == rank([A|b])
};

/// Exact row reduction of A x = b. For an inconsistent system `x` solves the
/// pivot rows and ignores the contradictory ones.
inline LinearSolution solve_exact(RationalMatrix a, Vector b) {
  if (static_cast<int>(b.size()) != a.rows()) throw DimensionMismatch("right-hand side length mismatch");
  const int rows = a.rows();
  const int cols = a.cols();
  std::vector<int> pivot_col;
  int rank = 0;
  for (int col = 0; col < cols && rank < rows; ++col) {
    int piv = rank;
    while (piv < rows && a(piv, col) == 0) ++piv;
    if (piv == rows) continue;
    for (int c = 0; c < cols; ++c) std::swap(a(piv, c), a(rank, c));
    std::swap(b[static_cast<std::size_t>(piv)], b[static_cast<std::size_t>(rank)]);
    Scalar p = a(rank, col);
    for (int c = 0; c < cols; ++c) a(rank, c) /= p;
    b[static_cast<std::size_t>(rank)] /= p;
    for (int r = 0; r < rows; ++r) {
      if (r == rank || a(r, col) == 0) continue;
      Scalar f = a(r, col);
      for (int c = 0; c < cols; ++c) a(r, c) -= f * a(rank, c);
      b[static_cast<std::size_t>(r)] -= f * b[static_cast<std::size_t>(rank)];
    }
    pivot_col.push_back(col);
    ++rank;
  }
  LinearSolution sol;
  sol.rank = rank;
  sol.x.assign(static_cast<std::size_t>(cols), Scalar(0));
  for (int r = 0; r < rank; ++r) sol.x[static_cast<std::size_t>(pivot_col[static_cast<std::size_t>(r)])] = b[static_cast<std::size_t>(r)];
  for (int r = rank; r < rows; ++r)
    if (b[static_cast<std::size_t>(r)] != 0) sol.consistent = false;
  return sol;
}

}  // namespace hkverify
