#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <string>
#include <vector>

#include "grank/core.hpp"
#include "grank/dense.hpp"
#include "grank/rng.hpp"

namespace grank {

/// Full spectrum of a real matrix: real parts carry the values, complex
/// eigenvalues come in exact conjugate pairs by construction.
using ComplexSpectrum = std::vector<std::complex<double>>;

struct EigOptions {
  double deflate_tol = 1e-12;       // relative subdiagonal deflation threshold
  std::size_t iter_cap_factor = 50; // total QR sweep budget = factor * n
  std::size_t dense_cap = kDefaultDenseCap;
};

namespace detail {

/// Householder reduction to upper Hessenberg form, in place. Eigenvalues
/// only; the orthogonal factor is not accumulated.
inline void hessenberg_reduce(DenseMatrix& h) {
  const std::size_t n = h.rows();
  if (n < 3) return;
  std::vector<double> v(n);
  for (std::size_t k = 0; k + 2 < n; ++k) {
    const std::size_t m = n - k - 1;  // length of the column tail below the diagonal
    double scale = 0.0;
    for (std::size_t i = k + 1; i < n; ++i) scale += std::abs(h(i, k));
    if (scale == 0.0) continue;
    double sigma2 = 0.0;
    for (std::size_t i = k + 1; i < n; ++i) {
      v[i - k - 1] = h(i, k) / scale;
      sigma2 += v[i - k - 1] * v[i - k - 1];
    }
    double alpha = -std::copysign(std::sqrt(sigma2), v[0]);
    const double vtv = sigma2 - v[0] * alpha;  // = ||v - alpha e1||^2 / 2
    if (vtv == 0.0) continue;
    v[0] -= alpha;
    // Left: rows k+1..n-1 of columns k..n-1.
    for (std::size_t c = k; c < n; ++c) {
      double s = 0.0;
      for (std::size_t i = 0; i < m; ++i) s += v[i] * h(k + 1 + i, c);
      s /= vtv;
      for (std::size_t i = 0; i < m; ++i) h(k + 1 + i, c) -= s * v[i];
    }
    // Right: columns k+1..n-1 of all rows.
    for (std::size_t r = 0; r < n; ++r) {
      double s = 0.0;
      for (std::size_t i = 0; i < m; ++i) s += h(r, k + 1 + i) * v[i];
      s /= vtv;
      for (std::size_t i = 0; i < m; ++i) h(r, k + 1 + i) -= s * v[i];
    }
    h(k + 1, k) = alpha * scale;
    for (std::size_t i = k + 2; i < n; ++i) h(i, k) = 0.0;
  }
}

/// Francis double-shift QR on an upper Hessenberg matrix, eigenvalues only.
/// Structure follows the classic hqr: deflate trailing 1x1 / 2x2 blocks,
/// exceptional ad-hoc shifts after 10 and 20 stalled sweeps on a block.
inline ComplexSpectrum hessenberg_qr(DenseMatrix& h, const EigOptions& opt) {
  const std::ptrdiff_t n = static_cast<std::ptrdiff_t>(h.rows());
  ComplexSpectrum eig(static_cast<std::size_t>(n));

  double anorm = 0.0;
  for (std::ptrdiff_t i = 0; i < n; ++i)
    for (std::ptrdiff_t j = std::max<std::ptrdiff_t>(i - 1, 0); j < n; ++j)
      anorm += std::abs(h(i, j));

  std::ptrdiff_t en = n - 1;
  double exshift = 0.0;
  std::size_t block_iter = 0;
  std::size_t budget = opt.iter_cap_factor * static_cast<std::size_t>(n);

  while (en >= 0) {
    // Find the active block [l, en]: scan for a negligible subdiagonal.
    std::ptrdiff_t l = en;
    while (l > 0) {
      double s = std::abs(h(l - 1, l - 1)) + std::abs(h(l, l));
      if (s == 0.0) s = anorm;
      if (std::abs(h(l, l - 1)) <= opt.deflate_tol * s) break;
      --l;
    }

    const double x = h(en, en);
    if (l == en) {
      eig[static_cast<std::size_t>(en)] = {x + exshift, 0.0};
      --en;
      block_iter = 0;
      continue;
    }

    const std::ptrdiff_t na = en - 1;
    const double y = h(na, na);
    const double w = h(en, na) * h(na, en);

    if (l == na) {
      // Two roots of the trailing 2x2 block.
      const double p = (y - x) / 2.0;
      const double q = p * p + w;
      const double zz = std::sqrt(std::abs(q));
      const double xs = x + exshift;
      if (q >= 0.0) {
        const double zr = p + std::copysign(zz, p);
        const double lam1 = xs + zr;
        eig[static_cast<std::size_t>(na)] = {lam1, 0.0};
        eig[static_cast<std::size_t>(en)] = {zr != 0.0 ? xs - w / zr : lam1, 0.0};
      } else {
        eig[static_cast<std::size_t>(na)] = {xs + p, zz};
        eig[static_cast<std::size_t>(en)] = {xs + p, -zz};
      }
      en -= 2;
      block_iter = 0;
      continue;
    }

    if (budget == 0)
      throw convergence_error("qr iteration budget exhausted with active block [" +
                              std::to_string(l) + "," + std::to_string(en) +
                              "] unresolved (indices 0.." + std::to_string(en) +
                              " not yet deflated)");
    --budget;

    double sx = x, sy = y, sw = w;
    if (block_iter == 10 || block_iter == 20) {
      // Ad-hoc exceptional shift to break symmetric stalls. The shift comes
      // off every not-yet-deflated diagonal entry, not just the active
      // block: exshift is restored at deflation time for all of them.
      exshift += sx;
      for (std::ptrdiff_t i = 0; i <= en; ++i) h(i, i) -= sx;
      const double s = std::abs(h(en, na)) + std::abs(h(na, en - 2));
      sx = 0.75 * s;
      sy = sx;
      sw = -0.4375 * s * s;
    }
    ++block_iter;

    // Look for two consecutive small subdiagonals to start the sweep from.
    std::ptrdiff_t m = en - 2;
    double p = 0.0, q = 0.0, r = 0.0;
    while (m >= l) {
      const double zz = h(m, m);
      const double rr = sx - zz;
      const double ss = sy - zz;
      p = (rr * ss - sw) / h(m + 1, m) + h(m, m + 1);
      q = h(m + 1, m + 1) - zz - rr - ss;
      r = h(m + 2, m + 1);
      const double scale = std::abs(p) + std::abs(q) + std::abs(r);
      p /= scale;
      q /= scale;
      r /= scale;
      if (m == l) break;
      const double tst = std::abs(p) * (std::abs(h(m - 1, m - 1)) + std::abs(zz) +
                                        std::abs(h(m + 1, m + 1)));
      if (std::abs(h(m, m - 1)) * (std::abs(q) + std::abs(r)) <= opt.deflate_tol * tst) break;
      --m;
    }
    for (std::ptrdiff_t i = m + 2; i <= en; ++i) {
      h(i, i - 2) = 0.0;
      if (i > m + 2) h(i, i - 3) = 0.0;
    }

    // Double QR sweep: chase the bulge over rows l..en, columns m..en.
    for (std::ptrdiff_t k = m; k <= na; ++k) {
      const bool notlast = k != na;
      double scale = 0.0;
      if (k != m) {
        p = h(k, k - 1);
        q = h(k + 1, k - 1);
        r = notlast ? h(k + 2, k - 1) : 0.0;
        scale = std::abs(p) + std::abs(q) + std::abs(r);
        if (scale == 0.0) continue;
        p /= scale;
        q /= scale;
        r /= scale;
      }
      double s = std::copysign(std::sqrt(p * p + q * q + r * r), p);
      if (s == 0.0) continue;
      if (k != m)
        h(k, k - 1) = -s * scale;
      else if (l != m)
        h(k, k - 1) = -h(k, k - 1);
      p += s;
      const double xx = p / s;
      const double yy = q / s;
      const double zz = r / s;
      q /= p;
      r /= p;
      for (std::ptrdiff_t j = k; j <= en; ++j) {
        double t = h(k, j) + q * h(k + 1, j);
        if (notlast) {
          t += r * h(k + 2, j);
          h(k + 2, j) -= t * zz;
        }
        h(k, j) -= t * xx;
        h(k + 1, j) -= t * yy;
      }
      for (std::ptrdiff_t i = l; i <= std::min(en, k + 3); ++i) {
        double t = xx * h(i, k) + yy * h(i, k + 1);
        if (notlast) {
          t += zz * h(i, k + 2);
          h(i, k + 2) -= t * r;
        }
        h(i, k) -= t;
        h(i, k + 1) -= t * q;
      }
    }
  }
  return eig;
}

}  // namespace detail

/// Sort convention for reported spectra: descending modulus, ties broken by
/// descending real part then descending imaginary part.
inline void sort_spectrum(ComplexSpectrum& s) {
  std::sort(s.begin(), s.end(), [](std::complex<double> a, std::complex<double> b) {
    const double ma = std::abs(a), mb = std::abs(b);
    if (ma != mb) return ma > mb;
    if (a.real() != b.real()) return a.real() > b.real();
    return a.imag() > b.imag();
  });
}

/// Eigenvalues of a real square matrix: Householder reduction to Hessenberg
/// form, then Francis double-shift QR with 2x2 block extraction for
/// conjugate pairs. Returned sorted per sort_spectrum.
inline ComplexSpectrum eigenvalues_dense(const DenseMatrix& m, const EigOptions& opt = {}) {
  if (m.rows() != m.cols()) throw dimension_error("eigenvalues_dense: matrix not square");
  if (m.rows() > opt.dense_cap)
    throw cap_error("eigenvalues_dense: n = " + std::to_string(m.rows()) +
                    " exceeds dense cap " + std::to_string(opt.dense_cap));
  if (!m.all_finite()) throw input_error("eigenvalues_dense: matrix has non-finite entries");
  if (m.rows() == 0) return {};
  DenseMatrix h = m;
  detail::hessenberg_reduce(h);
  ComplexSpectrum eig = detail::hessenberg_qr(h, opt);
  sort_spectrum(eig);
  return eig;
}

/// Modulus of the second-largest eigenvalue under the sort convention.
inline double second_largest_modulus(const ComplexSpectrum& sorted_spectrum) {
  if (sorted_spectrum.size() < 2)
    throw input_error("second_largest_modulus: need at least two eigenvalues");
  return std::abs(sorted_spectrum[1]);
}

/// Certified upper bound on the smallest singular value of M - lambda I:
/// a few inverse-iteration steps through a complex LU factorization produce
/// a unit vector u, and ||(M - lambda I) u||_2 (formed by explicit
/// multiplication) bounds sigma_min from above. Small for genuine
/// eigenvalues, large for spurious ones; independent of the QR path.
inline double min_singular_upper_bound(const DenseMatrix& m, std::complex<double> lambda,
                                       std::size_t iterations = 3,
                                       std::uint64_t seed = 0x5eed5eed5eed5eedULL) {
  if (m.rows() != m.cols()) throw dimension_error("min_singular_upper_bound: matrix not square");
  const std::size_t n = m.rows();
  if (n == 0) throw input_error("min_singular_upper_bound: empty matrix");
  using cd = std::complex<double>;

  std::vector<cd> b(n * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) b[i * n + j] = cd(m(i, j), 0.0) - (i == j ? lambda : cd(0.0));

  auto mat_vec_norm = [&](const std::vector<cd>& u) {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      cd acc(0.0);
      for (std::size_t j = 0; j < n; ++j) acc += b[i * n + j] * u[j];
      s += std::norm(acc);
    }
    return std::sqrt(s);
  };

  // LU with partial pivoting on a copy.
  std::vector<cd> lu = b;
  std::vector<std::size_t> perm(n);
  for (std::size_t i = 0; i < n; ++i) perm[i] = i;
  bool singular = false;
  for (std::size_t k = 0; k < n && !singular; ++k) {
    std::size_t piv = k;
    double best = std::abs(lu[perm[k] * n + k]);
    for (std::size_t i = k + 1; i < n; ++i) {
      const double cand = std::abs(lu[perm[i] * n + k]);
      if (cand > best) {
        best = cand;
        piv = i;
      }
    }
    if (best == 0.0) {
      singular = true;
      break;
    }
    std::swap(perm[k], perm[piv]);
    const cd pivot = lu[perm[k] * n + k];
    for (std::size_t i = k + 1; i < n; ++i) {
      const cd factor = lu[perm[i] * n + k] / pivot;
      lu[perm[i] * n + k] = factor;
      for (std::size_t j = k + 1; j < n; ++j) lu[perm[i] * n + j] -= factor * lu[perm[k] * n + j];
    }
  }
  if (singular) return 0.0;  // exact zero pivot: lambda is an eigenvalue to working precision

  auto solve = [&](const std::vector<cd>& rhs) {
    std::vector<cd> z(n);
    for (std::size_t i = 0; i < n; ++i) {
      cd acc = rhs[perm[i]];
      for (std::size_t j = 0; j < i; ++j) acc -= lu[perm[i] * n + j] * z[j];
      z[i] = acc;
    }
    for (std::size_t ii = n; ii-- > 0;) {
      cd acc = z[ii];
      for (std::size_t j = ii + 1; j < n; ++j) acc -= lu[perm[ii] * n + j] * z[j];
      z[ii] = acc / lu[perm[ii] * n + ii];
    }
    return z;
  };

  SplitMix64 rng(seed);
  std::vector<cd> y(n);
  for (std::size_t i = 0; i < n; ++i) y[i] = cd(rng.next_double() - 0.5, rng.next_double() - 0.5);
  double ynorm = 0.0;
  for (const cd& t : y) ynorm += std::norm(t);
  ynorm = std::sqrt(ynorm);
  for (cd& t : y) t /= ynorm;

  double bound = mat_vec_norm(y);
  for (std::size_t it = 0; it < iterations; ++it) {
    std::vector<cd> z = solve(y);
    double znorm = 0.0;
    for (const cd& t : z) znorm += std::norm(t);
    znorm = std::sqrt(znorm);
    if (!(znorm > 0.0) || !std::isfinite(znorm)) return 0.0;
    for (cd& t : z) t /= znorm;
    bound = std::min(bound, mat_vec_norm(z));
    y = std::move(z);
  }
  return bound;
}

}  // namespace grank
