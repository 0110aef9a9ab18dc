#pragma once

#include <cmath>
#include <cstddef>
#include <cstdio>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace grank {

// Refusal threshold for anything that materializes an n x n dense matrix.
inline constexpr std::size_t kDefaultDenseCap = 2048;

struct error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Malformed user input: graphs, vectors, configs, parse failures.
struct input_error : error {
  using error::error;
};

// Operands of incompatible sizes.
struct dimension_error : error {
  using error::error;
};

// Dense materialization refused because n exceeds the configured cap.
struct cap_error : error {
  using error::error;
};

// Iterative eigensolver ran out of its iteration budget.
struct convergence_error : error {
  using error::error;
};

// Convergence trace too short (or too noisy) to estimate a rate.
struct trace_error : error {
  using error::error;
};

// Summation order is part of the contract: index 0 upward, plain
// left-to-right accumulation. Everything downstream that promises bitwise
// reproducibility leans on this.
inline double sum(std::span<const double> x) {
  double s = 0.0;
  for (double t : x) s += t;
  return s;
}

inline double norm1(std::span<const double> x) {
  double s = 0.0;
  for (double t : x) s += std::abs(t);
  return s;
}

inline double norm1_diff(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size()) throw dimension_error("norm1_diff: length mismatch");
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += std::abs(a[i] - b[i]);
  return s;
}

inline double norm2(std::span<const double> x) {
  double s = 0.0;
  for (double t : x) s += t * t;
  return std::sqrt(s);
}

// 17 significant digits: enough to round-trip any binary64 value.
inline std::string format_double(double x) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

}  // namespace grank
