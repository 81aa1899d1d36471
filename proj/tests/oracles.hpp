#pragma once

// Reference computations used only by the tests. None of these go through
// the library's determinant or kernel code.

#include <cauchy/partitions.hpp>

#include <algorithm>
#include <cmath>
#include <complex>
#include <numeric>
#include <vector>

namespace oracle {

using cplx = std::complex<double>;
using CMatrix = std::vector<std::vector<cplx>>;

/// Leibniz expansion; fine for the m <= 4 matrices used here.
inline cplx leibniz_det(const CMatrix& a) {
  const std::size_t n = a.size();
  std::vector<std::size_t> perm(n);
  std::iota(perm.begin(), perm.end(), std::size_t{0});
  cplx total = 0.0;
  do {
    int inversions = 0;
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = i + 1; j < n; ++j) {
        if (perm[i] > perm[j]) ++inversions;
      }
    }
    cplx term = (inversions % 2) ? -1.0 : 1.0;
    for (std::size_t i = 0; i < n; ++i) term *= a[i][perm[i]];
    total += term;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return total;
}

enum class Family { SoOdd, Sp, SoEvenChi, ONeg };

/// Character as a ratio of complex alternants in x_i = exp(i theta_i):
/// entries x^a - x^-a (so, sp) or x^a + x^-a (chi, and so for det = -1).
inline cplx complex_character(Family f, const cauchy::Partition& lambda, const std::vector<double>& theta) {
  const int m = static_cast<int>(theta.size());
  double shift = 0.5;
  double sign = -1.0;
  if (f == Family::Sp) shift = 1.0;
  if (f == Family::SoEvenChi) {
    shift = 0.0;
    sign = 1.0;
  }
  if (f == Family::ONeg) sign = 1.0;
  auto build = [&](const cauchy::Partition& p) {
    CMatrix a(static_cast<std::size_t>(m), std::vector<cplx>(static_cast<std::size_t>(m)));
    for (int i = 0; i < m; ++i) {
      for (int j = 0; j < m; ++j) {
        const double e = p[static_cast<std::size_t>(j)] + (m - 1 - j) + shift;
        const double t = theta[static_cast<std::size_t>(i)];
        a[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = std::polar(1.0, e * t) + sign * std::polar(1.0, -e * t);
      }
    }
    return a;
  };
  return leibniz_det(build(lambda)) / leibniz_det(build(cauchy::Partition{}));
}

/// Schur polynomial by the bialternant, expanded with Leibniz.
inline cplx schur(const cauchy::Partition& lambda, const std::vector<double>& phi) {
  const int n = static_cast<int>(phi.size());
  auto build = [&](const cauchy::Partition& p) {
    CMatrix a(static_cast<std::size_t>(n), std::vector<cplx>(static_cast<std::size_t>(n)));
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) {
        const double e = p[static_cast<std::size_t>(j)] + (n - 1 - j);
        a[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = std::polar(1.0, e * phi[static_cast<std::size_t>(i)]);
      }
    }
    return a;
  };
  return leibniz_det(build(lambda)) / leibniz_det(build(cauchy::Partition{}));
}

/// Chi-square survival for odd degrees of freedom k = 2r + 1:
/// Q = erfc(sqrt(x/2)) + exp(-x/2) sum_{j=1}^{r} (x/2)^(j-1/2) / Gamma(j+1/2).
inline double chi2_sf_odd(double x, int k) {
  const int r = (k - 1) / 2;
  const double h = 0.5 * x;
  double sum = 0.0;
  for (int j = 1; j <= r; ++j) sum += std::pow(h, j - 0.5) / std::tgamma(j + 0.5);
  return std::erfc(std::sqrt(h)) + std::exp(-h) * sum;
}

/// Chi-square survival for even degrees of freedom k = 2r:
/// Q = exp(-x/2) sum_{j=0}^{r-1} (x/2)^j / j!.
inline double chi2_sf_even(double x, int k) {
  const double h = 0.5 * x;
  double term = 1.0, sum = 0.0;
  for (int j = 0; j < k / 2; ++j) {
    if (j > 0) term *= h / j;
    sum += term;
  }
  return std::exp(-h) * sum;
}

inline double chi2_sf(double x, int k) { return k % 2 ? chi2_sf_odd(x, k) : chi2_sf_even(x, k); }

/// Pearson chi-square statistic of counts against bin probabilities.
inline double pearson(const std::vector<long>& counts, const std::vector<double>& probs, long n) {
  double stat = 0.0;
  for (std::size_t b = 0; b < counts.size(); ++b) {
    const double e = probs[b] * static_cast<double>(n);
    stat += (counts[b] - e) * (counts[b] - e) / e;
  }
  return stat;
}

/// One-sample Kolmogorov-Smirnov distance to U[0,1].
inline double ks_uniform(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  const double n = static_cast<double>(v.size());
  double d = 0.0;
  for (std::size_t i = 0; i < v.size(); ++i) {
    d = std::max(d, std::max((i + 1) / n - v[i], v[i] - i / n));
  }
  return d;
}

} // namespace oracle
