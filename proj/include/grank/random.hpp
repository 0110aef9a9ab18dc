#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "grank/core.hpp"
#include "grank/google.hpp"
#include "grank/graph.hpp"
#include "grank/rng.hpp"
#include "grank/sparse.hpp"

namespace grank {

enum class InstanceMode {
  Dense,   // every column drawn uniformly from the probability simplex
  Sparse,  // `density` weighted draws per column
};

struct RandomInstanceSpec {
  std::size_t n = 0;
  std::uint64_t seed = 0;
  InstanceMode mode = InstanceMode::Dense;
  std::size_t density = 3;  // target nonzeros per column, sparse mode only

  void validate() const {
    if (n < 1) throw input_error("random instance: n must be >= 1");
    if (density < 1) throw input_error("random instance: density must be >= 1");
  }
};

/// Uniform point on the probability simplex: normalized unit exponentials.
/// Draw order is row 0 upward; part of the reproducibility contract.
inline std::vector<double> random_simplex(std::size_t n, SplitMix64& rng) {
  std::vector<double> x(n);
  double s = 0.0;
  for (double& t : x) {
    t = rng.next_exponential();
    s += t;
  }
  for (double& t : x) t /= s;
  return x;
}

inline PersonalizationVector random_personalization(std::size_t n, SplitMix64& rng) {
  return PersonalizationVector(random_simplex(n, rng));
}

/// Seeded column-stochastic matrix. Dense mode draws each column from the
/// simplex (column 0 first, rows in order within a column); sparse mode
/// makes `density` draws per column of (row, exponential weight), letting
/// collisions accumulate. Identical specs produce bitwise-identical
/// matrices.
inline SparseTransition random_stochastic(const RandomInstanceSpec& spec) {
  spec.validate();
  SplitMix64 rng(spec.seed);
  DirectedGraph g;
  g.n = spec.n;
  if (spec.mode == InstanceMode::Dense) {
    g.edges.reserve(spec.n * spec.n);
    for (std::size_t j = 0; j < spec.n; ++j)
      for (std::size_t i = 0; i < spec.n; ++i)
        g.edges.push_back({j, i, rng.next_exponential()});
  } else {
    g.edges.reserve(spec.n * spec.density);
    for (std::size_t j = 0; j < spec.n; ++j)
      for (std::size_t k = 0; k < spec.density; ++k) {
        const std::size_t row = static_cast<std::size_t>(rng.next_below(spec.n));
        g.edges.push_back({j, row, rng.next_exponential()});
      }
  }
  return build_transition(g, PatchPolicy::Uniform);
}

}  // namespace grank
