#pragma once

#include <Eigen/Dense>

#include <cmath>
#include <algorithm>
#include <complex>
#include <type_traits>

namespace cauchy::detail {

using RealMatrix = Eigen::MatrixXd;
using ComplexMatrix = Eigen::MatrixXcd;

// LU with partial pivoting. Eigen's dynamic determinant() already routes
// through PartialPivLU for sizes above 4; spelled out here so small matrices
// take the same path.
template <typename Derived>
typename Derived::Scalar determinant(const Eigen::MatrixBase<Derived>& a) {
  if (a.rows() == 0) return typename Derived::Scalar(1);
  if (a.rows() == 1) return a(0, 0);
  return Eigen::PartialPivLU<Eigen::Matrix<typename Derived::Scalar, Eigen::Dynamic, Eigen::Dynamic>>(a)
      .determinant();
}

template <typename Derived>
double max_abs_entry(const Eigen::MatrixBase<Derived>& a) {
  return a.size() == 0 ? 0.0 : static_cast<double>(a.cwiseAbs().maxCoeff());
}

/// Product over i<j of (v_i - v_j).
template <typename Vec>
double vandermonde(const Vec& v) {
  double out = 1.0;
  for (std::size_t i = 0; i < v.size(); ++i) {
    for (std::size_t j = i + 1; j < v.size(); ++j) out *= v[i] - v[j];
  }
  return out;
}

/// Smallest |v_i - v_j| over i<j, +inf for fewer than two entries.
template <typename Vec>
double min_gap(const Vec& v) {
  double out = HUGE_VAL;
  for (std::size_t i = 0; i < v.size(); ++i) {
    for (std::size_t j = i + 1; j < v.size(); ++j) out = std::min(out, std::abs(v[i] - v[j]));
  }
  return out;
}

/// Neumaier compensated accumulator.
template <typename T>
class CompensatedSum {
public:
  void add(T x) {
    if constexpr (std::is_floating_point_v<T>) {
      add_real(sum_, comp_, x);
    } else {
      double sr = sum_.real(), cr = comp_.real(), si = sum_.imag(), ci = comp_.imag();
      add_real(sr, cr, x.real());
      add_real(si, ci, x.imag());
      sum_ = T(sr, si);
      comp_ = T(cr, ci);
    }
  }
  T value() const { return sum_ + comp_; }

private:
  static void add_real(double& sum, double& comp, double x) {
    double t = sum + x;
    if (std::abs(sum) >= std::abs(x)) {
      comp += (sum - t) + x;
    } else {
      comp += (x - t) + sum;
    }
    sum = t;
  }
  T sum_{};
  T comp_{};
};

} // namespace cauchy::detail
