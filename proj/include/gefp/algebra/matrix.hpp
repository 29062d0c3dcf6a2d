#pragma once

#include <cstddef>
#include <initializer_list>
#include <utility>
#include <vector>

#include "gefp/errors.hpp"
#include "gefp/scalar.hpp"

namespace gefp {

/// Dense row-major square matrix.
template <class T>
class Matrix {
 public:
  Matrix() = default;
  explicit Matrix(std::size_t n) : n_(n), data_(n * n) {}
  Matrix(std::size_t n, const T& fill) : n_(n), data_(n * n, fill) {}
  Matrix(std::initializer_list<std::initializer_list<T>> rows) : n_(rows.size()) {
    data_.reserve(n_ * n_);
    for (const auto& row : rows) {
      if (row.size() != n_) throw BadIndex("matrix literal is not square");
      data_.insert(data_.end(), row.begin(), row.end());
    }
  }

  static Matrix identity(std::size_t n) {
    Matrix m(n, T(0));
    for (std::size_t i = 0; i < n; ++i) m(i, i) = T(1);
    return m;
  }

  std::size_t size() const { return n_; }

  T& operator()(std::size_t i, std::size_t j) { return data_[i * n_ + j]; }
  const T& operator()(std::size_t i, std::size_t j) const { return data_[i * n_ + j]; }

  /// Submatrix keeping the listed rows and columns, in the given order.
  Matrix select(const std::vector<std::size_t>& rows, const std::vector<std::size_t>& cols) const {
    if (rows.size() != cols.size()) throw BadIndex("select: non-square selection");
    Matrix out(rows.size());
    for (std::size_t i = 0; i < rows.size(); ++i)
      for (std::size_t j = 0; j < cols.size(); ++j) out(i, j) = (*this)(rows[i], cols[j]);
    return out;
  }

 private:
  std::size_t n_ = 0;
  std::vector<T> data_;
};

namespace detail {

// Bareiss elimination over the integers: every intermediate quotient is exact.
inline Integer bareiss_det(std::vector<std::vector<Integer>> m) {
  const std::size_t n = m.size();
  if (n == 0) return Integer(1);
  Integer sign = 1;
  Integer prev = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (m[k][k] == 0) {
      std::size_t p = k + 1;
      while (p < n && m[p][k] == 0) ++p;
      if (p == n) return Integer(0);
      std::swap(m[k], m[p]);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) / prev;
      }
      m[i][k] = 0;
    }
    prev = m[k][k];
  }
  return sign * m[n - 1][n - 1];
}

}  // namespace detail

/// Exact determinant: rows are scaled to integers, then eliminated
/// fraction-free.
inline Rational det(const Matrix<Rational>& a) {
  const std::size_t n = a.size();
  std::vector<std::vector<Integer>> m(n, std::vector<Integer>(n));
  Integer scale = 1;
  for (std::size_t i = 0; i < n; ++i) {
    Integer lcm = 1;
    for (std::size_t j = 0; j < n; ++j) {
      lcm = boost::multiprecision::lcm(lcm, Integer(boost::multiprecision::denominator(a(i, j))));
    }
    for (std::size_t j = 0; j < n; ++j) {
      m[i][j] = boost::multiprecision::numerator(a(i, j)) *
                (lcm / boost::multiprecision::denominator(a(i, j)));
    }
    scale *= lcm;
  }
  return Rational(detail::bareiss_det(std::move(m)), scale);
}

/// Float determinant by Gaussian elimination with partial pivoting.
inline Real det(const Matrix<Real>& a) {
  const std::size_t n = a.size();
  if (n == 0) return Real(1);
  Matrix<Real> m = a;
  Real result = 1;
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t p = k;
    for (std::size_t i = k + 1; i < n; ++i)
      if (abs(m(i, k)) > abs(m(p, k))) p = i;
    if (m(p, k) == 0) return Real(0);
    if (p != k) {
      for (std::size_t j = 0; j < n; ++j) std::swap(m(k, j), m(p, j));
      result = -result;
    }
    result *= m(k, k);
    for (std::size_t i = k + 1; i < n; ++i) {
      const Real f = m(i, k) / m(k, k);
      if (f == 0) continue;
      for (std::size_t j = k + 1; j < n; ++j) m(i, j) -= f * m(k, j);
    }
  }
  return result;
}

/// Sign of a permutation given as an image vector.
inline int permutation_sign(const std::vector<std::size_t>& perm) {
  int sign = 1;
  for (std::size_t i = 0; i < perm.size(); ++i)
    for (std::size_t j = i + 1; j < perm.size(); ++j)
      if (perm[i] > perm[j]) sign = -sign;
  return sign;
}

}  // namespace gefp
