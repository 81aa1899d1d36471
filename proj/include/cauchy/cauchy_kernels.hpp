#pragma once

// Closed forms of sum_lambda z^|lambda| chi_lambda(g) chi_lambda(h) for the
// unitary and compact classical groups. Every pole factor
// (1 - z x y)(1 - z/(x y)) is expanded into the real quadratic
// 1 - 2 z cos(theta + phi) + z^2, so no complex arithmetic is needed.

#include <cauchy/detail/linalg.hpp>
#include <cauchy/errors.hpp>
#include <cauchy/series_oracle.hpp>
#include <cauchy/spectrum.hpp>

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <string>
#include <utility>
#include <vector>

namespace cauchy {

namespace detail {

/// Below this z the closed form is 0/0 for m >= 2 and the series is used.
inline constexpr double small_z_threshold = 1e-4;

inline void check_vandermonde(const std::vector<double>& traces, double tol, const char* what) {
  for (std::size_t i = 0; i < traces.size(); ++i) {
    for (std::size_t j = i + 1; j < traces.size(); ++j) {
      if (std::abs(traces[i] - traces[j]) < tol) {
        throw DegenerateSpectrum(std::string(what) + ": angles " + std::to_string(i) + " and " +
                                 std::to_string(j) + " have coincident cosines");
      }
    }
  }
}

/// (1 - z x y)(1 - z x^-1 y^-1)(1 - z x^-1 y)(1 - z x y^-1) for x = e^{i a}, y = e^{i b}.
inline double pole_product(double a, double b, double z) {
  const double zz = 1.0 + z * z;
  return (zz - 2.0 * z * std::cos(a + b)) * (zz - 2.0 * z * std::cos(a - b));
}

inline void prepare(const HalfSpectrum& x, const HalfSpectrum& y, GroupType g, const KernelParams& p,
                    const char* what) {
  if (x.group() != g || y.group() != g) {
    throw InvalidArgument(std::string(what) + ": expected " + std::string(to_string(g)) + " spectra");
  }
  if (x.rank() != y.rank()) throw InvalidArgument(std::string(what) + ": spectra of different rank");
  check_vandermonde(x.traces(), p.degeneracy_tolerance(), what);
  check_vandermonde(y.traces(), p.degeneracy_tolerance(), what);
}

/// The kernels are symmetric in (x, y) and in the order of each spectrum's
/// angles. Evaluating on a canonical ordering makes that exact in floating
/// point.
inline std::pair<HalfSpectrum, HalfSpectrum> canonical_pair(const HalfSpectrum& x, const HalfSpectrum& y) {
  auto sorted = [](const HalfSpectrum& s) {
    auto a = s.angles();
    std::sort(a.begin(), a.end());
    return HalfSpectrum(std::move(a), s.group(), s.det_sign());
  };
  HalfSpectrum a = sorted(x), b = sorted(y);
  if (std::pair(b.angles(), b.det_sign()) < std::pair(a.angles(), a.det_sign())) std::swap(a, b);
  return {std::move(a), std::move(b)};
}

inline double vandermonde_product(const HalfSpectrum& x, const HalfSpectrum& y) {
  return vandermonde(x.traces()) * vandermonde(y.traces());
}

/// (1 - s z)^m det(M) / V(x) V(y) with s = det_x det_y and
/// M_ij = [(1 + s z)^2 + z (det_y 2cos x_i + det_x 2cos y_j)] / pole_product.
/// Signs (1, 1) give the SO(2m+1) form. No z^C(m,2) division.
inline double type_b_scaled(const HalfSpectrum& x, const HalfSpectrum& y, double z, int det_x, int det_y) {
  const int m = x.rank();
  const double s = det_x * det_y;
  const auto tx = x.traces();
  const auto ty = y.traces();
  RealMatrix c(m, m);
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < m; ++j) {
      const auto ui = static_cast<std::size_t>(i), uj = static_cast<std::size_t>(j);
      const double num = (1.0 + s * z) * (1.0 + s * z) + z * (det_y * tx[ui] + det_x * ty[uj]);
      c(i, j) = num / pole_product(x.angles()[ui], y.angles()[uj], z);
    }
  }
  return std::pow(1.0 - s * z, m) * determinant(c) / vandermonde_product(x, y);
}

inline double z_power(double z, int m) { return std::pow(z, m * (m - 1) / 2); }

inline bool use_series(int m, double z) { return m >= 2 && z < small_z_threshold; }

inline double series_fallback(const HalfSpectrum& x, const HalfSpectrum& y, const KernelParams& p) {
  return truncated_kernel(x, y, p, TruncationPolicy::automatic(1e-16)).value;
}

} // namespace detail

/// prod_{i,j} 1 / (1 - z a_i b_j), with b_j replaced by conj(b_j) when
/// conjugate_second is set.
inline std::complex<double> kernel_unitary(const UnitarySpectrum& a, const UnitarySpectrum& b, const KernelParams& p,
                                           bool conjugate_second = false) {
  if (a.dimension() != b.dimension()) throw InvalidArgument("kernel_unitary: dimension mismatch");
  std::complex<double> out{1.0, 0.0};
  for (double pa : a.angles()) {
    for (double pb : b.angles()) {
      const double phase = conjugate_second ? pa - pb : pa + pb;
      out /= 1.0 - p.z() * std::polar(1.0, phase);
    }
  }
  return out;
}

/// SO(2m+1) kernel:
///   (1-z)^m det(C) / (z^C(m,2) V(x) V(y)),
///   C_ij = [(1+z)^2 + z(2cos x_i + 2cos y_j)] / pole_product(x_i, y_j),
/// with V the Vandermonde product of 2cos(theta).
inline double kernel_so_odd(const HalfSpectrum& x, const HalfSpectrum& y, const KernelParams& p) {
  detail::prepare(x, y, GroupType::SoOdd, p, "kernel_so_odd");
  const auto [a, b] = detail::canonical_pair(x, y);
  if (detail::use_series(a.rank(), p.z())) return detail::series_fallback(a, b, p);
  return detail::type_b_scaled(a, b, p.z(), 1, 1) / detail::z_power(p.z(), a.rank());
}

/// O(2m+1) kernel. The determinant signs enter through s = det(g) det(h):
///   (1 - s z)^m det(M) / (z^C(m,2) V(x) V(y)).
inline double kernel_o_odd(const HalfSpectrum& x, const HalfSpectrum& y, const KernelParams& p) {
  detail::prepare(x, y, GroupType::OOdd, p, "kernel_o_odd");
  const auto [a, b] = detail::canonical_pair(x, y);
  if (detail::use_series(a.rank(), p.z())) return detail::series_fallback(a, b, p);
  return detail::type_b_scaled(a, b, p.z(), a.det_sign(), b.det_sign()) / detail::z_power(p.z(), a.rank());
}

/// Sp(2m) kernel: (1-z^2)^m det(1 / pole_product) / (z^C(m,2) V(x) V(y)).
inline double kernel_sp(const HalfSpectrum& x, const HalfSpectrum& y, const KernelParams& p) {
  detail::prepare(x, y, GroupType::Sp, p, "kernel_sp");
  const auto [xs, ys] = detail::canonical_pair(x, y);
  const int m = xs.rank();
  if (detail::use_series(m, p.z())) return detail::series_fallback(xs, ys, p);
  const double z = p.z();
  detail::RealMatrix c(m, m);
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < m; ++j) {
      c(i, j) = 1.0 / detail::pole_product(xs.angles()[static_cast<std::size_t>(i)],
                                           ys.angles()[static_cast<std::size_t>(j)], z);
    }
  }
  return std::pow(1.0 - z * z, m) * detail::determinant(c) /
         (detail::z_power(z, m) * detail::vandermonde_product(xs, ys));
}

/// Normalization that makes kernel_so_even equal the chi-series exactly. The
/// exponent-zero row of det(x^(m-i) + x^-(m-i)) has entries 2, so each
/// spectrum contributes a factor 2 relative to its Vandermonde product.
inline constexpr double so_even_exact_normalization = 0.25;

/// SO(2m) kernel over the chi characters:
///   normalization * det(sum of 1/(1 - z x^+-1 y^+-1)) / (z^C(m,2) V(x) V(y)).
/// normalization = 1 gives the uncorrected form, four times the series.
inline double kernel_so_even(const HalfSpectrum& x, const HalfSpectrum& y, const KernelParams& p,
                             double normalization = so_even_exact_normalization) {
  detail::prepare(x, y, GroupType::SoEven, p, "kernel_so_even");
  const auto [xs, ys] = detail::canonical_pair(x, y);
  if (!(normalization > 0.0)) throw InvalidArgument("kernel_so_even: normalization must be positive");
  const int m = xs.rank();
  if (detail::use_series(m, p.z())) return 4.0 * normalization * detail::series_fallback(xs, ys, p);
  const double z = p.z();
  const double zz = 1.0 + z * z;
  detail::RealMatrix c(m, m);
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < m; ++j) {
      const double a = xs.angles()[static_cast<std::size_t>(i)];
      const double b = ys.angles()[static_cast<std::size_t>(j)];
      const double cs = std::cos(a + b), cd = std::cos(a - b);
      c(i, j) = 2.0 * (1.0 - z * cs) / (zz - 2.0 * z * cs) + 2.0 * (1.0 - z * cd) / (zz - 2.0 * z * cd);
    }
  }
  return normalization * detail::determinant(c) / (detail::z_power(z, m) * detail::vandermonde_product(xs, ys));
}

/// Dispatch on the spectra's group; SO(2m) uses the exact normalization.
inline double kernel(const HalfSpectrum& x, const HalfSpectrum& y, const KernelParams& p) {
  switch (x.group()) {
  case GroupType::SoOdd: return kernel_so_odd(x, y, p);
  case GroupType::Sp: return kernel_sp(x, y, p);
  case GroupType::SoEven: return kernel_so_even(x, y, p);
  case GroupType::OOdd: return kernel_o_odd(x, y, p);
  }
  throw InvalidArgument("unknown group");
}

/// z -> 1 value of the m-times differentiated SO(2m+1) identity divided by m!:
///   (-1)^m det((u_i + v_j) / (u_i - v_j)^2) / (V(u) V(v)),
/// u_i = 2cos(x_i) + 2, v_j = 2cos(y_j) + 2. Needs distinct u's, distinct v's
/// and no u_i = v_j (no shared eigenvalue); `tolerance` bounds all gaps.
inline double limit_kernel_so_odd(const HalfSpectrum& x, const HalfSpectrum& y, double tolerance = 1e-8) {
  if (x.group() != GroupType::SoOdd || y.group() != GroupType::SoOdd) {
    throw InvalidArgument("limit_kernel_so_odd: expected so-odd spectra");
  }
  if (x.rank() != y.rank()) throw InvalidArgument("limit_kernel_so_odd: spectra of different rank");
  const int m = x.rank();
  auto u = x.traces();
  auto v = y.traces();
  for (double& e : u) e += 2.0;
  for (double& e : v) e += 2.0;
  detail::check_vandermonde(u, tolerance, "limit_kernel_so_odd");
  detail::check_vandermonde(v, tolerance, "limit_kernel_so_odd");
  detail::RealMatrix c(m, m);
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < m; ++j) {
      const double ui = u[static_cast<std::size_t>(i)], vj = v[static_cast<std::size_t>(j)];
      const double gap = ui - vj;
      if (std::abs(gap) < tolerance) {
        throw DegenerateSpectrum("limit_kernel_so_odd: x angle " + std::to_string(i) + " and y angle " +
                                 std::to_string(j) + " share an eigenvalue");
      }
      c(i, j) = (ui + vj) / (gap * gap);
    }
  }
  const double sign = (m % 2 == 0) ? 1.0 : -1.0;
  return sign * detail::determinant(c) / (detail::vandermonde(u) * detail::vandermonde(v));
}

struct DerivativeEstimate {
  double value = 0.0;
  double error = 0.0;
  double step = 0.0;
};

struct DerivativeOptions {
  /// Accepted relative error of the extrapolated derivative.
  double relative_tolerance = 1e-7;
  /// Each refinement divides the step by this factor.
  double step_ratio = 1.4;
  int max_levels = 12;
  double degeneracy_tolerance = 1e-8;
};

namespace detail {

inline double binomial(int n, int k) {
  double out = 1.0;
  for (int i = 1; i <= k; ++i) out = out * (n - k + i) / i;
  return out;
}

/// Order-n derivative of f at z by symmetric central differences refined
/// with a Richardson (Neville) tableau in h^2. Steps keep z +- (n/2) h at
/// least 10 h away from 0 and 1.
template <typename F>
DerivativeEstimate richardson_derivative(F&& f, double z, int order, const DerivativeOptions& opts) {
  const double half_width = 0.5 * order;
  const double h0 = std::min(z, 1.0 - z) / (10.0 + half_width);
  if (!(h0 > 0.0)) throw StepUnderflow("richardson_derivative: no admissible step at z");

  auto stencil = [&](double h) {
    CompensatedSum<double> acc;
    for (int k = 0; k <= order; ++k) {
      const double sign = (k % 2 == 0) ? 1.0 : -1.0;
      acc.add(sign * binomial(order, k) * f(z + (half_width - k) * h));
    }
    return acc.value() / std::pow(h, order);
  };

  const int levels = opts.max_levels;
  std::vector<std::vector<double>> a(static_cast<std::size_t>(levels), std::vector<double>(static_cast<std::size_t>(levels)));
  const double ratio2 = opts.step_ratio * opts.step_ratio;
  double h = h0;
  DerivativeEstimate best{0.0, HUGE_VAL, h0};
  a[0][0] = stencil(h);
  best.value = a[0][0];
  for (int i = 1; i < levels; ++i) {
    h /= opts.step_ratio;
    const auto ui = static_cast<std::size_t>(i);
    a[ui][0] = stencil(h);
    double fac = ratio2;
    for (std::size_t j = 1; j <= ui; ++j) {
      a[ui][j] = (a[ui][j - 1] * fac - a[ui - 1][j - 1]) / (fac - 1.0);
      fac *= ratio2;
      const double err = std::max(std::abs(a[ui][j] - a[ui][j - 1]), std::abs(a[ui][j] - a[ui - 1][j - 1]));
      if (err <= best.error) {
        best = {a[ui][j], err, h};
      }
    }
    if (std::abs(a[ui][ui] - a[ui - 1][ui - 1]) >= 2.0 * best.error) break;
  }
  return best;
}

} // namespace detail

/// order-th z-derivative of (1-z)^m det(C(z)) / (V(x) V(y)), the right side
/// of the SO(2m+1) identity multiplied by z^C(m,2), at z in (0,1). Requires
/// order == m, the order for which the differentiated series has a finite
/// z -> 1 limit.
inline DerivativeEstimate kernel_derivative_so_odd(const HalfSpectrum& x, const HalfSpectrum& y, double z, int order,
                                                   const DerivativeOptions& opts = {}) {
  if (x.group() != GroupType::SoOdd || y.group() != GroupType::SoOdd) {
    throw InvalidArgument("kernel_derivative_so_odd: expected so-odd spectra");
  }
  if (x.rank() != y.rank()) throw InvalidArgument("kernel_derivative_so_odd: spectra of different rank");
  if (order != x.rank()) throw InvalidArgument("kernel_derivative_so_odd: order must equal the rank m");
  if (!(z > 0.0 && z < 1.0)) throw InvalidArgument("kernel_derivative_so_odd: z must lie in (0, 1)");
  detail::check_vandermonde(x.traces(), opts.degeneracy_tolerance, "kernel_derivative_so_odd");
  detail::check_vandermonde(y.traces(), opts.degeneracy_tolerance, "kernel_derivative_so_odd");

  auto f = [&](double t) { return detail::type_b_scaled(x, y, t, 1, 1); };
  DerivativeEstimate est = detail::richardson_derivative(f, z, order, opts);
  const double scale = std::max(std::abs(est.value), 1e-300);
  if (!(est.error <= opts.relative_tolerance * scale)) {
    throw StepUnderflow("kernel_derivative_so_odd: error estimate " + std::to_string(est.error) +
                        " exceeds requested relative accuracy at z = " + std::to_string(z));
  }
  return est;
}

} // namespace cauchy
