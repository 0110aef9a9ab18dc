#pragma once

#include <cmath>
#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "grank/core.hpp"
#include "grank/google.hpp"

namespace grank {

struct SolverConfig {
  double tol = 1e-10;           // 1-norm successive-difference threshold
  std::size_t max_iters = 10000;
  bool record_trace = false;
  std::size_t rate_window = 10;
  double rate_floor = 1e-14;    // diffs at or below this are roundoff, not signal

  void validate() const {
    if (!(tol > 0.0)) throw input_error("solver config: tol must be positive");
    if (max_iters < 1) throw input_error("solver config: max_iters must be >= 1");
    if (rate_window < 1) throw input_error("solver config: rate_window must be >= 1");
  }
};

/// Successive-difference history of a power-method run. diff_norms[k] is
/// ||x_{k+1} - x_k||_1 for iteration k+1.
struct ConvergenceTrace {
  std::vector<double> diff_norms;

  /// diff_norms[k] / diff_norms[k-1]; defined only for positive denominators.
  double ratio(std::size_t k) const {
    if (k == 0 || k >= diff_norms.size()) throw trace_error("trace ratio: index out of range");
    if (!(diff_norms[k - 1] > 0.0)) throw trace_error("trace ratio: zero denominator");
    return diff_norms[k] / diff_norms[k - 1];
  }
};

struct RateEstimate {
  double rate = 0.0;
  std::size_t excluded = 0;  // diffs at/below the floor, dropped from the fit
};

/// Trailing geometric-mean contraction ratio: the geometric mean of the
/// last `window` consecutive ratios, computed over the final run of diffs
/// that sit above `floor`. Telescopes to (d_K / d_{K-window})^(1/window),
/// which keeps interior roundoff out of the estimate.
inline RateEstimate estimate_rate(const ConvergenceTrace& trace, std::size_t window = 10,
                                  double floor = 1e-14) {
  if (window < 1) throw input_error("estimate_rate: window must be >= 1");
  const auto& d = trace.diff_norms;
  RateEstimate est;
  for (double t : d)
    if (!(t > floor)) ++est.excluded;

  // Last run of consecutive above-floor diffs.
  std::size_t end = d.size();
  while (end > 0 && !(d[end - 1] > floor)) --end;
  std::size_t begin = end;
  while (begin > 0 && d[begin - 1] > floor) --begin;

  if (end - begin < window + 1)
    throw trace_error("estimate_rate: need " + std::to_string(window + 1) +
                      " consecutive usable diff norms, have " + std::to_string(end - begin));
  est.rate = std::pow(d[end - 1] / d[end - 1 - window], 1.0 / static_cast<double>(window));
  return est;
}

struct RankResult {
  RankVector x;
  std::size_t iterations = 0;
  bool converged = false;
  double final_residual = 0.0;
  std::optional<double> estimated_rate;  // absent when the trace was too short
  std::size_t rate_excluded_diffs = 0;
  ConvergenceTrace trace;  // populated only when cfg.record_trace
};

/// ||A x - x||_1, an eigenvector-quality certificate independent of how
/// many iterations produced x.
inline double residual(const GoogleOperator& op, const RankVector& x) {
  if (x.size() != op.n()) throw dimension_error("residual: vector length mismatch");
  std::vector<double> y = op.apply(x.entries());
  return norm1_diff(y, x.entries());
}

/// Power iteration x <- A x with a 1-norm renormalization each step. The
/// renormalization only suppresses floating-point drift: A preserves the
/// 1-norm of nonnegative vectors, so the division is by a number within
/// roundoff of 1. Stops when ||x_{k+1} - x_k||_1 <= tol. Non-convergence
/// is a result state, not an exception.
inline RankResult power_method(const GoogleOperator& op, const RankVector& x0,
                               const SolverConfig& cfg = {}) {
  cfg.validate();
  if (x0.size() != op.n()) throw input_error("power_method: x0 length does not match operator");

  std::vector<double> x(x0.entries().begin(), x0.entries().end());
  ConvergenceTrace trace;
  trace.diff_norms.reserve(std::min<std::size_t>(cfg.max_iters, 4096));
  bool converged = false;
  std::size_t iterations = 0;

  for (std::size_t k = 0; k < cfg.max_iters; ++k) {
    std::vector<double> y = op.apply(x);
    const double s = sum(y);  // equals ||y||_1: the iterate stays nonnegative
    for (double& t : y) t /= s;
    const double diff = norm1_diff(y, x);
    trace.diff_norms.push_back(diff);
    x = std::move(y);
    ++iterations;
    if (diff <= cfg.tol) {
      converged = true;
      break;
    }
  }

  RankResult result{RankVector(std::move(x)), iterations, converged, 0.0, std::nullopt, 0, {}};
  result.final_residual = residual(op, result.x);
  try {
    RateEstimate est = estimate_rate(trace, cfg.rate_window, cfg.rate_floor);
    result.estimated_rate = est.rate;
    result.rate_excluded_diffs = est.excluded;
  } catch (const trace_error&) {
    // Converged too fast (or too noisily) to measure a rate.
  }
  if (cfg.record_trace) result.trace = std::move(trace);
  return result;
}

inline RankResult power_method(const GoogleOperator& op, const SolverConfig& cfg = {}) {
  return power_method(op, RankVector::uniform(op.n()), cfg);
}

}  // namespace grank
