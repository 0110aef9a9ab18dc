#pragma once

#include <cmath>
#include <cstddef>
#include <vector>

#include "grank/core.hpp"
#include "grank/dense.hpp"

namespace grank {

/// Max-abs deviation of U^T U from the identity.
inline double orthogonality_defect(const DenseMatrix& u) {
  if (u.rows() != u.cols()) throw dimension_error("orthogonality_defect: matrix not square");
  return (u.transposed() * u - DenseMatrix::identity(u.rows())).max_abs();
}

/// Orthogonal U whose first column is e normalized to Euclidean length 1.
/// Built as the Householder reflector I - 2 u u^T / (u^T u) with
/// u = e_hat - e_1; the first entry of e_hat is 1/sqrt(n) < 1 for n >= 2,
/// so the difference never cancels catastrophically. n = 1 gives [[1]].
inline DenseMatrix build_orthogonal_U(std::size_t n) {
  if (n == 0) throw input_error("build_orthogonal_U: n must be >= 1");
  if (n == 1) return DenseMatrix::identity(1);
  const double inv_sqrt_n = 1.0 / std::sqrt(static_cast<double>(n));
  std::vector<double> u(n, inv_sqrt_n);
  u[0] -= 1.0;
  double uu = 0.0;
  for (double t : u) uu += t * t;
  const double scale = 2.0 / uu;
  DenseMatrix m = DenseMatrix::identity(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) m(i, j) -= scale * u[i] * u[j];
  return m;
}

/// Block decomposition of U^T M U:
///
///   [ top_left  r^T ]    with top_right_norm = ||r^T||_inf,
///   [ w         T   ]
///
/// For column-stochastic M the top row is (1, 0) up to roundoff, because
/// e_hat^T M = e_hat^T survives the similarity.
struct SimilarityReport {
  double top_left = 0.0;
  double top_right_norm = 0.0;
  std::vector<double> w;  // bottom-left column, length n-1
  DenseMatrix T;          // bottom-right (n-1) x (n-1) block
  double column_sum_defect = 0.0;  // max |colsum(M) - 1|; nonzero means M was not stochastic
};

inline SimilarityReport similarity_reduce(const DenseMatrix& m, const DenseMatrix& u) {
  if (m.rows() != m.cols()) throw dimension_error("similarity_reduce: M not square");
  if (u.rows() != u.cols() || u.rows() != m.rows())
    throw dimension_error("similarity_reduce: U shape does not match M");
  if (!m.all_finite()) throw input_error("similarity_reduce: M has non-finite entries");
  if (orthogonality_defect(u) > 1e-8)
    throw input_error("similarity_reduce: U is not orthogonal within 1e-8");

  const std::size_t n = m.rows();
  SimilarityReport rep;
  for (std::size_t j = 0; j < n; ++j)
    rep.column_sum_defect = std::max(rep.column_sum_defect, std::abs(m.column_sum(j) - 1.0));

  const DenseMatrix b = u.transposed() * (m * u);
  rep.top_left = b(0, 0);
  double row_abs_sum = 0.0;
  for (std::size_t j = 1; j < n; ++j) row_abs_sum += std::abs(b(0, j));
  rep.top_right_norm = row_abs_sum;
  rep.w.resize(n - 1);
  for (std::size_t i = 1; i < n; ++i) rep.w[i - 1] = b(i, 0);
  rep.T = b.block(1, 1, n - 1, n - 1);
  return rep;
}

}  // namespace grank
