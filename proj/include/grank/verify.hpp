#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <numeric>
#include <optional>
#include <vector>

#include "grank/core.hpp"
#include "grank/dense.hpp"
#include "grank/eig.hpp"
#include "grank/google.hpp"
#include "grank/similarity.hpp"
#include "grank/sparse.hpp"

namespace grank {

/// Greedy nearest-neighbor bipartite matching between two equal-length
/// spectra: returns the largest matched distance. Points are consumed in
/// descending-modulus order, each taking its nearest unused partner.
inline double match_multisets(const ComplexSpectrum& s1, const ComplexSpectrum& s2) {
  if (s1.size() != s2.size()) throw dimension_error("match_multisets: length mismatch");
  ComplexSpectrum a = s1;
  sort_spectrum(a);
  std::vector<bool> used(s2.size(), false);
  double worst = 0.0;
  for (const std::complex<double>& z : a) {
    std::size_t best = s2.size();
    double best_dist = 0.0;
    for (std::size_t j = 0; j < s2.size(); ++j) {
      if (used[j]) continue;
      const double dist = std::abs(z - s2[j]);
      if (best == s2.size() || dist < best_dist) {
        best = j;
        best_dist = dist;
      }
    }
    used[best] = true;
    worst = std::max(worst, best_dist);
  }
  return worst;
}

/// Drop the eigenvalue nearest to 1+0i (the stochastic unit eigenvalue;
/// when several are equally close, any copy serves).
inline ComplexSpectrum drop_unit_eigenvalue(const ComplexSpectrum& s) {
  if (s.empty()) throw input_error("drop_unit_eigenvalue: empty spectrum");
  std::size_t best = 0;
  double best_dist = std::abs(s[0] - 1.0);
  for (std::size_t j = 1; j < s.size(); ++j) {
    const double dist = std::abs(s[j] - 1.0);
    if (dist < best_dist) {
      best = j;
      best_dist = dist;
    }
  }
  ComplexSpectrum out;
  out.reserve(s.size() - 1);
  for (std::size_t j = 0; j < s.size(); ++j)
    if (j != best) out.push_back(s[j]);
  return out;
}

struct VerifyTolerances {
  double structure = 1e-10;  // top row of both reduced matrices vs (1, 0)
  double block = 1e-10;      // ||T_A - alpha T_P||_F <= block * (1 + ||T_P||_F)
  double eig_match = 1e-8;   // multiset distance between eig(A)\{1} and alpha(eig(P)\{1})
};

struct TheoremReport {
  double block_defect = 0.0;       // ||T_A - alpha T_P||_F
  double p_top_left_defect = 0.0;  // |top_left - 1| for U^T P U
  double p_top_right_norm = 0.0;
  double a_top_left_defect = 0.0;  // same for U^T A U
  double a_top_right_norm = 0.0;
  double rank1_defect = 0.0;       // teleport term vs its closed block form
  std::optional<double> eig_multiset_defect;
  std::optional<double> a_second_modulus;  // |lambda_2(A)|, when the spectrum was computed
  bool passed = false;
  SimilarityReport p_report;
  SimilarityReport a_report;
};

/// Numerical reconstruction of the similarity argument: reduce P and A with
/// the same U, compare the trailing blocks (T_A should be alpha T_P), check
/// the teleport rank-1 term against its closed block form, and optionally
/// confirm that the non-unit spectrum of A is alpha times that of P.
inline TheoremReport verify_theorem(const SparseTransition& p, double alpha,
                                    const PersonalizationVector& v,
                                    const VerifyTolerances& tols = {},
                                    bool with_spectrum = true,
                                    std::size_t cap = kDefaultDenseCap) {
  const std::size_t n = p.n();
  if (n > cap)
    throw cap_error("verify_theorem: n = " + std::to_string(n) + " exceeds dense cap " +
                    std::to_string(cap));
  GoogleOperator op(p, alpha, v);  // validates alpha and dimensions

  const DenseMatrix p_dense = p.patch_policy() == PatchPolicy::Personalization
                                  ? p.to_dense(v.entries(), cap)
                                  : p.to_dense({}, cap);
  const DenseMatrix a_dense = op.materialize_dense(cap);
  const DenseMatrix u = build_orthogonal_U(n);

  TheoremReport rep;
  rep.p_report = similarity_reduce(p_dense, u);
  rep.a_report = similarity_reduce(a_dense, u);
  rep.p_top_left_defect = std::abs(rep.p_report.top_left - 1.0);
  rep.p_top_right_norm = rep.p_report.top_right_norm;
  rep.a_top_left_defect = std::abs(rep.a_report.top_left - 1.0);
  rep.a_top_right_norm = rep.a_report.top_right_norm;
  rep.block_defect = (rep.a_report.T - alpha * rep.p_report.T).frobenius_norm();

  // The teleport term (1-alpha) (U^T v)(e^T U) must equal the closed form
  // (1-alpha) * column(1/sqrt(n); U1^T v) * row(sqrt(n), 0).
  {
    const double sqrt_n = std::sqrt(static_cast<double>(n));
    std::vector<double> utv = u.transposed().multiply(v.entries());
    std::vector<double> etu(n, 0.0);
    for (std::size_t j = 0; j < n; ++j) etu[j] = u.column_sum(j);
    std::vector<double> closed_col = utv;
    closed_col[0] = 1.0 / sqrt_n;
    std::vector<double> closed_row(n, 0.0);
    closed_row[0] = sqrt_n;
    double defect = 0.0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        defect = std::max(defect, std::abs((1.0 - alpha) * utv[i] * etu[j] -
                                           (1.0 - alpha) * closed_col[i] * closed_row[j]));
    rep.rank1_defect = defect;
  }

  if (with_spectrum) {
    EigOptions eopt;
    eopt.dense_cap = cap;
    ComplexSpectrum eig_a = eigenvalues_dense(a_dense, eopt);
    ComplexSpectrum eig_p = eigenvalues_dense(p_dense, eopt);
    rep.a_second_modulus = n >= 2 ? std::optional<double>(second_largest_modulus(eig_a))
                                  : std::nullopt;
    ComplexSpectrum rest_a = drop_unit_eigenvalue(eig_a);
    ComplexSpectrum rest_p = drop_unit_eigenvalue(eig_p);
    for (std::complex<double>& z : rest_p) z *= alpha;
    rep.eig_multiset_defect = match_multisets(rest_a, rest_p);
  }

  rep.passed = rep.p_top_left_defect <= tols.structure && rep.p_top_right_norm <= tols.structure &&
               rep.a_top_left_defect <= tols.structure && rep.a_top_right_norm <= tols.structure &&
               rep.rank1_defect <= tols.structure &&
               rep.block_defect <= tols.block * (1.0 + rep.p_report.T.frobenius_norm()) &&
               (!rep.eig_multiset_defect || *rep.eig_multiset_defect <= tols.eig_match);
  return rep;
}

}  // namespace grank
