// Builds a small random column-stochastic matrix, computes its pagerank
// vector, and shows that damping scales every non-unit eigenvalue by alpha.

#include <iostream>

#include "grank/grank.hpp"

int main() {
  using namespace grank;
  const std::size_t n = 8;
  const double alpha = 0.85;

  SparseTransition p = random_stochastic({n, 2024, InstanceMode::Sparse, 3});
  GoogleOperator op(p, alpha);

  RankResult r = power_method(op);
  std::cout << "pagerank (n=" << n << ", alpha=" << alpha << "):\n"
            << write_rank_result(r, OutputFormat::Csv);

  ComplexSpectrum eig_p = eigenvalues_dense(p.to_dense());
  ComplexSpectrum eig_a = eigenvalues_dense(op.materialize_dense());
  std::cout << "\n  eig(P)                     eig(A)\n";
  for (std::size_t i = 0; i < n; ++i)
    std::cout << "  " << eig_p[i].real() << (eig_p[i].imag() < 0 ? " - " : " + ")
              << std::abs(eig_p[i].imag()) << "i\t" << eig_a[i].real()
              << (eig_a[i].imag() < 0 ? " - " : " + ") << std::abs(eig_a[i].imag()) << "i\n";

  TheoremReport rep = verify_theorem(p, alpha, PersonalizationVector::uniform(n));
  std::cout << "\nnon-unit spectrum of A vs alpha*spectrum(P): max distance "
            << format_double(*rep.eig_multiset_defect) << (rep.passed ? " (pass)" : " (FAIL)")
            << "\n";
  return rep.passed ? 0 : 1;
}
