#pragma once

// Test-side oracles, deliberately independent of the solver paths they
// check: a pivoted Gaussian elimination for fixed-point cross-checks and
// tiny fixture-graph builders.

#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <vector>

#include "grank/dense.hpp"
#include "grank/graph.hpp"

namespace oracle {

/// Solve M x = b by Gaussian elimination with partial pivoting.
inline std::vector<double> solve_dense(grank::DenseMatrix m, std::vector<double> b) {
  const std::size_t n = m.rows();
  if (m.cols() != n || b.size() != n) throw std::invalid_argument("solve_dense: shape mismatch");
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t piv = k;
    for (std::size_t i = k + 1; i < n; ++i)
      if (std::abs(m(i, k)) > std::abs(m(piv, k))) piv = i;
    if (m(piv, k) == 0.0) throw std::invalid_argument("solve_dense: singular matrix");
    if (piv != k) {
      for (std::size_t j = 0; j < n; ++j) std::swap(m(k, j), m(piv, j));
      std::swap(b[k], b[piv]);
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      const double f = m(i, k) / m(k, k);
      m(i, k) = 0.0;
      for (std::size_t j = k + 1; j < n; ++j) m(i, j) -= f * m(k, j);
      b[i] -= f * b[k];
    }
  }
  std::vector<double> x(n);
  for (std::size_t ii = n; ii-- > 0;) {
    double s = b[ii];
    for (std::size_t j = ii + 1; j < n; ++j) s -= m(ii, j) * x[j];
    x[ii] = s / m(ii, ii);
  }
  return x;
}

/// The stationary vector through the linear-system route: solve
/// (I - alpha P) x = (1 - alpha) v and renormalize to unit 1-norm.
inline std::vector<double> pagerank_linear_solve(const grank::DenseMatrix& p_dense, double alpha,
                                                 const std::vector<double>& v) {
  const std::size_t n = p_dense.rows();
  grank::DenseMatrix m = grank::DenseMatrix::identity(n) - alpha * p_dense;
  std::vector<double> rhs(n);
  for (std::size_t i = 0; i < n; ++i) rhs[i] = (1.0 - alpha) * v[i];
  std::vector<double> x = solve_dense(m, rhs);
  double s = 0.0;
  for (double t : x) s += t;
  for (double& t : x) t /= s;
  return x;
}

inline grank::DirectedGraph cycle_graph(std::size_t n) {
  grank::DirectedGraph g;
  g.n = n;
  for (std::size_t i = 0; i < n; ++i) g.edges.push_back({i, (i + 1) % n, 1.0});
  return g;
}

inline grank::DirectedGraph identity_graph(std::size_t n) {
  grank::DirectedGraph g;
  g.n = n;
  for (std::size_t i = 0; i < n; ++i) g.edges.push_back({i, i, 1.0});
  return g;
}

/// 0 -> 1 -> ... -> n-1 with the last node dangling.
inline grank::DirectedGraph chain_graph(std::size_t n) {
  grank::DirectedGraph g;
  g.n = n;
  for (std::size_t i = 0; i + 1 < n; ++i) g.edges.push_back({i, i + 1, 1.0});
  return g;
}

/// Every column proportional to `u`: the rank-1 stochastic matrix u e^T.
inline grank::DirectedGraph rank_one_graph(const std::vector<double>& u) {
  grank::DirectedGraph g;
  g.n = u.size();
  for (std::size_t j = 0; j < g.n; ++j)
    for (std::size_t i = 0; i < g.n; ++i)
      if (u[i] > 0.0) g.edges.push_back({j, i, u[i]});
  return g;
}

}  // namespace oracle
