#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <cmath>
#include <complex>

#include "grank/eig.hpp"
#include "grank/random.hpp"
#include "grank/verify.hpp"
#include "support/oracles.hpp"

using namespace grank;

TEST_CASE("spectra of permutation cycles are roots of unity") {
  SparseTransition p2 = build_transition(oracle::cycle_graph(2));
  ComplexSpectrum e2 = eigenvalues_dense(p2.to_dense());
  REQUIRE(e2.size() == 2);
  CHECK(std::abs(e2[0] - std::complex<double>(1.0, 0.0)) <= 1e-12);
  CHECK(std::abs(e2[1] - std::complex<double>(-1.0, 0.0)) <= 1e-12);

  SparseTransition p3 = build_transition(oracle::cycle_graph(3));
  ComplexSpectrum e3 = eigenvalues_dense(p3.to_dense());
  REQUIRE(e3.size() == 3);
  // sorted: 1 first, then the conjugate pair -1/2 +- i sqrt(3)/2
  CHECK(std::abs(e3[0] - std::complex<double>(1.0, 0.0)) <= 1e-12);
  CHECK(std::abs(e3[1] - std::complex<double>(-0.5, 0.8660254037844386)) <= 1e-12);
  CHECK(std::abs(e3[2] - std::complex<double>(-0.5, -0.8660254037844386)) <= 1e-12);
}

TEST_CASE("trivial shapes") {
  DenseMatrix one(1, 1);
  one(0, 0) = 0.25;
  ComplexSpectrum e = eigenvalues_dense(one);
  REQUIRE(e.size() == 1);
  CHECK(e[0].real() == 0.25);

  CHECK(eigenvalues_dense(DenseMatrix()).empty());

  DenseMatrix tri(3, 3);
  tri(0, 0) = 3.0;
  tri(0, 1) = 5.0;
  tri(1, 1) = -2.0;
  tri(1, 2) = 1.0;
  tri(2, 2) = 0.5;
  ComplexSpectrum et = eigenvalues_dense(tri);
  CHECK(std::abs(et[0] - std::complex<double>(3.0, 0.0)) <= 1e-12);
  CHECK(std::abs(et[1] - std::complex<double>(-2.0, 0.0)) <= 1e-12);
  CHECK(std::abs(et[2] - std::complex<double>(0.5, 0.0)) <= 1e-12);
}

TEST_CASE("eigenvalues_dense input validation") {
  CHECK_THROWS_AS(eigenvalues_dense(DenseMatrix(2, 3)), dimension_error);
  EigOptions opt;
  opt.dense_cap = 4;
  CHECK_THROWS_AS(eigenvalues_dense(DenseMatrix(5, 5), opt), cap_error);
  DenseMatrix bad(2, 2);
  bad(0, 0) = std::numeric_limits<double>::quiet_NaN();
  CHECK_THROWS_AS(eigenvalues_dense(bad), input_error);
}

TEST_CASE("an exhausted sweep budget names the unresolved block") {
  SparseTransition p = build_transition(oracle::cycle_graph(5));
  EigOptions opt;
  opt.iter_cap_factor = 0;  // no sweeps allowed at all
  CHECK_THROWS_MATCHES(eigenvalues_dense(p.to_dense(), opt), convergence_error,
                       Catch::Matchers::MessageMatches(
                           Catch::Matchers::ContainsSubstring("active block")));
}

TEST_CASE("random stochastic spectra: unit eigenvalue, bounded moduli, conjugate closure") {
  SplitMix64 rng(8881);
  for (int trial = 0; trial < 20; ++trial) {
    const std::size_t n = 2 + rng.next_below(15);
    SparseTransition p = random_stochastic({n, rng.next(), InstanceMode::Dense, 3});
    DenseMatrix m = p.to_dense();
    ComplexSpectrum eig = eigenvalues_dense(m);
    REQUIRE(eig.size() == n);

    bool has_one = false;
    for (const auto& z : eig) {
      CHECK(std::abs(z) <= 1.0 + 1e-8);
      if (std::abs(z - std::complex<double>(1.0, 0.0)) <= 1e-8) has_one = true;
    }
    CHECK(has_one);

    // Conjugation closure: the spectrum matches its own conjugate.
    ComplexSpectrum conj = eig;
    for (auto& z : conj) z = std::conj(z);
    CHECK(match_multisets(eig, conj) <= 1e-8);
  }
}

TEST_CASE("every reported eigenvalue passes the singular-value residual oracle") {
  SplitMix64 rng(9132);
  for (int trial = 0; trial < 8; ++trial) {
    const std::size_t n = 3 + rng.next_below(12);
    SparseTransition p = random_stochastic({n, rng.next(), InstanceMode::Dense, 3});
    DenseMatrix m = p.to_dense();
    const double budget = 1e-6 * m.frobenius_norm();
    for (const auto& z : eigenvalues_dense(m)) CHECK(min_singular_upper_bound(m, z) <= budget);
  }
}

TEST_CASE("the residual oracle rejects non-eigenvalues") {
  SparseTransition p = build_transition(oracle::cycle_graph(8));
  DenseMatrix m = p.to_dense();
  CHECK(min_singular_upper_bound(m, {0.5, 0.5}) > 1e-3);
  CHECK(min_singular_upper_bound(m, {2.0, 0.0}) > 0.5);
  // ... and certifies exact singularity.
  DenseMatrix singular(2, 2);
  singular(0, 0) = 1.0;
  CHECK(min_singular_upper_bound(singular, {1.0, 0.0}) <= 1e-15);
}

TEST_CASE("second_largest_modulus follows the sort convention") {
  ComplexSpectrum s{{1.0, 0.0}, {-0.85, 0.0}, {0.2, 0.0}};
  sort_spectrum(s);
  CHECK(second_largest_modulus(s) == Catch::Approx(0.85));
  ComplexSpectrum tiny{{1.0, 0.0}};
  CHECK_THROWS_AS(second_largest_modulus(tiny), input_error);
}
