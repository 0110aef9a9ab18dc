#pragma once

#include <algorithm>
#include <cstddef>
#include <numeric>
#include <span>
#include <vector>

#include "grank/core.hpp"
#include "grank/dense.hpp"
#include "grank/graph.hpp"

namespace grank {

/// What an all-zero (dangling) column turns into after patching.
enum class PatchPolicy {
  Uniform,          // column becomes e/n
  Personalization,  // column becomes the teleport vector, bound at apply time
};

/// Column-stochastic transition matrix in compressed-sparse-column form.
/// Columns that were all-zero before patching are not stored; they are kept
/// as a sorted index list and expanded on the fly from the patch policy, so
/// the matvec stays O(nnz + d) plus the unavoidable O(n) output pass.
///
/// Fixed accumulation order (the determinism contract): columns in
/// increasing index order, entries within a column in increasing row order,
/// dangling mass accumulated over the sorted dangling list and applied last.
class SparseTransition {
 public:
  std::size_t n() const { return n_; }
  std::size_t nnz() const { return values_.size(); }
  PatchPolicy patch_policy() const { return policy_; }
  const std::vector<std::size_t>& dangling_columns() const { return dangling_; }

  std::span<const std::size_t> column_offsets() const { return col_ptr_; }
  std::span<const std::size_t> row_indices() const { return row_idx_; }
  std::span<const double> values() const { return values_; }

  bool is_dangling(std::size_t j) const {
    return std::binary_search(dangling_.begin(), dangling_.end(), j);
  }

  /// Logical column sum after patching (stored sum for regular columns,
  /// exactly 1 for patched ones).
  double column_sum(std::size_t j) const {
    if (j >= n_) throw dimension_error("column_sum: column index out of range");
    if (is_dangling(j)) return 1.0;
    double s = 0.0;
    for (std::size_t k = col_ptr_[j]; k < col_ptr_[j + 1]; ++k) s += values_[k];
    return s;
  }

  /// y = P x with the Uniform patch. Personalization-patched matrices need
  /// the explicit patch-column overload.
  std::vector<double> apply(std::span<const double> x) const {
    if (policy_ == PatchPolicy::Personalization)
      throw input_error("apply: personalization-patched matrix needs an explicit patch column");
    return apply_with_patch(x, {});
  }

  /// y = P x where dangling columns equal `patch` (the deferred
  /// personalization column). `patch` must be length n.
  std::vector<double> apply(std::span<const double> x, std::span<const double> patch) const {
    if (policy_ == PatchPolicy::Uniform)
      return apply_with_patch(x, {});
    if (patch.size() != n_) throw dimension_error("apply: patch column length mismatch");
    return apply_with_patch(x, patch);
  }

  /// Dense expansion including patched columns. Verifier support only.
  DenseMatrix to_dense(std::span<const double> patch = {},
                       std::size_t cap = kDefaultDenseCap) const {
    if (n_ > cap)
      throw cap_error("to_dense: n = " + std::to_string(n_) + " exceeds dense cap " +
                      std::to_string(cap));
    if (policy_ == PatchPolicy::Personalization && patch.size() != n_)
      throw input_error("to_dense: personalization-patched matrix needs a patch column");
    DenseMatrix d(n_, n_);
    for (std::size_t j = 0; j < n_; ++j)
      for (std::size_t k = col_ptr_[j]; k < col_ptr_[j + 1]; ++k) d(row_idx_[k], j) = values_[k];
    const double inv_n = 1.0 / static_cast<double>(n_);
    for (std::size_t j : dangling_)
      for (std::size_t i = 0; i < n_; ++i)
        d(i, j) = policy_ == PatchPolicy::Uniform ? inv_n : patch[i];
    return d;
  }

  friend SparseTransition build_transition(const DirectedGraph& g, PatchPolicy policy);

 private:
  std::vector<double> apply_with_patch(std::span<const double> x,
                                       std::span<const double> patch) const {
    if (x.size() != n_) throw dimension_error("apply: vector length mismatch");
    std::vector<double> y(n_, 0.0);
    for (std::size_t j = 0; j < n_; ++j) {
      const double xj = x[j];
      for (std::size_t k = col_ptr_[j]; k < col_ptr_[j + 1]; ++k) y[row_idx_[k]] += values_[k] * xj;
    }
    double dangling_mass = 0.0;
    for (std::size_t j : dangling_) dangling_mass += x[j];
    if (dangling_mass != 0.0) {
      if (patch.empty()) {
        const double t = dangling_mass / static_cast<double>(n_);
        for (std::size_t i = 0; i < n_; ++i) y[i] += t;
      } else {
        for (std::size_t i = 0; i < n_; ++i) y[i] += dangling_mass * patch[i];
      }
    }
    return y;
  }

  std::size_t n_ = 0;
  std::vector<std::size_t> col_ptr_;  // n+1 offsets
  std::vector<std::size_t> row_idx_;  // strictly increasing within a column
  std::vector<double> values_;        // nonnegative, columns sum to 1
  std::vector<std::size_t> dangling_;
  PatchPolicy policy_ = PatchPolicy::Uniform;
};

/// Column j of the result is node j's out-edge weights normalized to sum 1.
/// Duplicate edges accumulate before normalization; all-zero columns are
/// recorded as dangling and patched per `policy`.
inline SparseTransition build_transition(const DirectedGraph& g,
                                         PatchPolicy policy = PatchPolicy::Uniform) {
  g.validate();
  const std::size_t n = g.n;

  // Bucket edges by source column, accumulating duplicates.
  std::vector<std::size_t> count(n + 1, 0);
  for (const Edge& e : g.edges) ++count[e.source + 1];
  std::vector<std::size_t> start(n + 1, 0);
  std::partial_sum(count.begin(), count.end(), start.begin());

  std::vector<std::pair<std::size_t, double>> buckets(g.edges.size());
  {
    std::vector<std::size_t> cursor(start.begin(), start.end() - 1);
    for (const Edge& e : g.edges) buckets[cursor[e.source]++] = {e.target, e.weight};
  }

  SparseTransition P;
  P.n_ = n;
  P.policy_ = policy;
  P.col_ptr_.assign(n + 1, 0);
  P.row_idx_.reserve(g.edges.size());
  P.values_.reserve(g.edges.size());

  for (std::size_t j = 0; j < n; ++j) {
    auto first = buckets.begin() + static_cast<std::ptrdiff_t>(start[j]);
    auto last = buckets.begin() + static_cast<std::ptrdiff_t>(start[j + 1]);
    std::sort(first, last, [](const auto& a, const auto& b) { return a.first < b.first; });
    double col_sum = 0.0;
    for (auto it = first; it != last; ++it) col_sum += it->second;
    if (first == last) {
      P.dangling_.push_back(j);
      P.col_ptr_[j + 1] = P.row_idx_.size();
      continue;
    }
    for (auto it = first; it != last;) {
      const std::size_t row = it->first;
      double w = 0.0;
      for (; it != last && it->first == row; ++it) w += it->second;
      P.row_idx_.push_back(row);
      P.values_.push_back(w / col_sum);
    }
    P.col_ptr_[j + 1] = P.row_idx_.size();
  }
  return P;
}

}  // namespace grank
