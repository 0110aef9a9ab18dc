#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <span>
#include <vector>

#include "grank/core.hpp"

namespace grank {

/// Row-major dense real matrix. Small and unclever on purpose: the dense
/// path only ever sees desk-scale n (guarded by kDefaultDenseCap).
class DenseMatrix {
 public:
  DenseMatrix() = default;
  DenseMatrix(std::size_t rows, std::size_t cols, double fill = 0.0)
      : rows_(rows), cols_(cols), a_(rows * cols, fill) {}

  static DenseMatrix identity(std::size_t n) {
    DenseMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  double& operator()(std::size_t i, std::size_t j) { return a_[i * cols_ + j]; }
  double operator()(std::size_t i, std::size_t j) const { return a_[i * cols_ + j]; }

  std::span<const double> data() const { return a_; }

  bool all_finite() const {
    return std::all_of(a_.begin(), a_.end(), [](double t) { return std::isfinite(t); });
  }

  DenseMatrix transposed() const {
    DenseMatrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
  }

  DenseMatrix block(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const {
    DenseMatrix b(nr, nc);
    for (std::size_t i = 0; i < nr; ++i)
      for (std::size_t j = 0; j < nc; ++j) b(i, j) = (*this)(r0 + i, c0 + j);
    return b;
  }

  std::vector<double> multiply(std::span<const double> x) const {
    if (x.size() != cols_) throw dimension_error("DenseMatrix::multiply: length mismatch");
    std::vector<double> y(rows_, 0.0);
    for (std::size_t i = 0; i < rows_; ++i) {
      double s = 0.0;
      const double* row = &a_[i * cols_];
      for (std::size_t j = 0; j < cols_; ++j) s += row[j] * x[j];
      y[i] = s;
    }
    return y;
  }

  double column_sum(std::size_t j) const {
    double s = 0.0;
    for (std::size_t i = 0; i < rows_; ++i) s += (*this)(i, j);
    return s;
  }

  double frobenius_norm() const {
    double s = 0.0;
    for (double t : a_) s += t * t;
    return std::sqrt(s);
  }

  double max_abs() const {
    double m = 0.0;
    for (double t : a_) m = std::max(m, std::abs(t));
    return m;
  }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> a_;
};

inline DenseMatrix operator*(const DenseMatrix& a, const DenseMatrix& b) {
  if (a.cols() != b.rows()) throw dimension_error("DenseMatrix multiply: inner dimension mismatch");
  DenseMatrix c(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t k = 0; k < a.cols(); ++k) {
      const double aik = a(i, k);
      for (std::size_t j = 0; j < b.cols(); ++j) c(i, j) += aik * b(k, j);
    }
  return c;
}

inline DenseMatrix operator-(const DenseMatrix& a, const DenseMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols())
    throw dimension_error("DenseMatrix subtract: shape mismatch");
  DenseMatrix c(a.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) c(i, j) = a(i, j) - b(i, j);
  return c;
}

inline DenseMatrix operator*(double s, const DenseMatrix& a) {
  DenseMatrix c(a.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) c(i, j) = s * a(i, j);
  return c;
}

}  // namespace grank
