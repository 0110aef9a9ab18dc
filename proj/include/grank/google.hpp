#pragma once

#include <algorithm>
#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "grank/core.hpp"
#include "grank/dense.hpp"
#include "grank/sparse.hpp"

namespace grank {

inline constexpr double kStochasticTol = 1e-12;

namespace detail {

inline void check_stochastic_vector(std::span<const double> x, const char* what) {
  for (double t : x) {
    if (!(t >= 0.0))
      throw input_error(std::string(what) + ": entries must be nonnegative and finite");
  }
  const double s = sum(x);
  if (std::abs(s - 1.0) > kStochasticTol)
    throw input_error(std::string(what) + ": entries must sum to 1, got " + format_double(s));
}

}  // namespace detail

/// Teleportation distribution: nonnegative, sums to 1.
class PersonalizationVector {
 public:
  explicit PersonalizationVector(std::vector<double> v) : v_(std::move(v)) {
    if (v_.empty()) throw input_error("personalization vector: empty");
    detail::check_stochastic_vector(v_, "personalization vector");
  }

  static PersonalizationVector uniform(std::size_t n) {
    if (n == 0) throw input_error("personalization vector: n must be >= 1");
    return PersonalizationVector(std::vector<double>(n, 1.0 / static_cast<double>(n)));
  }

  std::size_t size() const { return v_.size(); }
  double operator[](std::size_t i) const { return v_[i]; }
  std::span<const double> entries() const { return v_; }
  double min_entry() const { return *std::min_element(v_.begin(), v_.end()); }

 private:
  std::vector<double> v_;
};

/// A pagerank iterate or result: nonnegative with unit 1-norm.
class RankVector {
 public:
  explicit RankVector(std::vector<double> x) : x_(std::move(x)) {
    if (x_.empty()) throw input_error("rank vector: empty");
    detail::check_stochastic_vector(x_, "rank vector");
  }

  static RankVector uniform(std::size_t n) {
    if (n == 0) throw input_error("rank vector: n must be >= 1");
    return RankVector(std::vector<double>(n, 1.0 / static_cast<double>(n)));
  }

  /// All mass on one node. Handy as a deterministic non-stationary start.
  static RankVector point_mass(std::size_t n, std::size_t node) {
    if (node >= n) throw input_error("rank vector: point mass node out of range");
    std::vector<double> x(n, 0.0);
    x[node] = 1.0;
    return RankVector(std::move(x));
  }

  std::size_t size() const { return x_.size(); }
  double operator[](std::size_t i) const { return x_[i]; }
  std::span<const double> entries() const { return x_; }

 private:
  std::vector<double> x_;
};

/// The damped operator A = alpha P + (1 - alpha) v e^T, applied implicitly:
/// a sparse matvec plus a rank-1 correction. A is never formed densely
/// outside materialize_dense. Holds a reference to P; the transition must
/// outlive the operator.
class GoogleOperator {
 public:
  GoogleOperator(const SparseTransition& transition, double alpha, PersonalizationVector v)
      : transition_(transition), alpha_(alpha), v_(std::move(v)) {
    if (!(alpha > 0.0) || !(alpha < 1.0))
      throw input_error("alpha must lie strictly inside (0,1), got " + format_double(alpha));
    if (v_.size() != transition_.n())
      throw dimension_error("personalization vector length does not match transition size");
  }

  GoogleOperator(const SparseTransition& transition, double alpha)
      : GoogleOperator(transition, alpha, PersonalizationVector::uniform(transition.n())) {}

  GoogleOperator(const SparseTransition&&, double, PersonalizationVector) = delete;
  GoogleOperator(const SparseTransition&&, double) = delete;

  std::size_t n() const { return transition_.n(); }
  double alpha() const { return alpha_; }
  const SparseTransition& transition() const { return transition_; }
  const PersonalizationVector& personalization() const { return v_; }

  /// y = alpha (P x) + (1 - alpha) (e^T x) v.
  std::vector<double> apply(std::span<const double> x) const {
    if (x.size() != n()) throw dimension_error("apply: vector length mismatch");
    std::vector<double> y = transition_.patch_policy() == PatchPolicy::Personalization
                                ? transition_.apply(x, v_.entries())
                                : transition_.apply(x);
    const double teleport = (1.0 - alpha_) * sum(x);
    for (std::size_t i = 0; i < y.size(); ++i) y[i] = alpha_ * y[i] + teleport * v_[i];
    return y;
  }

  /// Dense A with A(i,j) = alpha P(i,j) + (1 - alpha) v(i). Refuses above
  /// the cap so nobody densifies a big instance by accident.
  DenseMatrix materialize_dense(std::size_t cap = kDefaultDenseCap) const {
    if (n() > cap)
      throw cap_error("materialize_dense: n = " + std::to_string(n()) + " exceeds dense cap " +
                      std::to_string(cap));
    DenseMatrix a = transition_.patch_policy() == PatchPolicy::Personalization
                        ? transition_.to_dense(v_.entries(), cap)
                        : transition_.to_dense({}, cap);
    DenseMatrix out(n(), n());
    for (std::size_t i = 0; i < n(); ++i) {
      const double vi = (1.0 - alpha_) * v_[i];
      for (std::size_t j = 0; j < n(); ++j) out(i, j) = alpha_ * a(i, j) + vi;
    }
    return out;
  }

 private:
  const SparseTransition& transition_;
  double alpha_;
  PersonalizationVector v_;
};

inline std::vector<double> apply_google(const GoogleOperator& op, std::span<const double> x) {
  return op.apply(x);
}

}  // namespace grank
