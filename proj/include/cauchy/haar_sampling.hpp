#pragma once

// Haar-distributed random rotations and eigenvalue spectra for the classical
// groups, plus the axis-then-angle "naive" SO(3) sampler that is NOT Haar.

#include <cauchy/detail/linalg.hpp>
#include <cauchy/errors.hpp>
#include <cauchy/spectrum.hpp>

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>
#include <random>
#include <string>
#include <vector>

namespace cauchy {

/// Reproducible random stream: identical (seed, stream_id) pairs produce
/// identical sequences. Not safe to share between threads.
class RngStream {
public:
  explicit RngStream(std::uint64_t seed, std::uint64_t stream_id = 0) : seed_(seed), stream_id_(stream_id) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(stream_id), static_cast<std::uint32_t>(stream_id >> 32),
                      0x5eedu};
    engine_.seed(seq);
  }

  std::uint64_t seed() const noexcept { return seed_; }
  std::uint64_t stream_id() const noexcept { return stream_id_; }

  /// Uniform on [0, 1).
  double uniform() { return std::generate_canonical<double, 53>(engine_); }

  double normal() { return normal_(engine_); }

  std::mt19937_64& engine() noexcept { return engine_; }

private:
  std::uint64_t seed_;
  std::uint64_t stream_id_;
  std::mt19937_64 engine_;
  std::normal_distribution<double> normal_{0.0, 1.0};
};

/// 3x3 rotation matrix; orthogonality and det = +1 checked on construction.
class Rotation3 {
public:
  static constexpr double tolerance = 1e-9;

  Rotation3() : m_(Eigen::Matrix3d::Identity()) {}

  explicit Rotation3(const Eigen::Matrix3d& m) : m_(m) {
    const double orth = (m_.transpose() * m_ - Eigen::Matrix3d::Identity()).cwiseAbs().maxCoeff();
    const double det = m_.determinant();
    if (!(orth <= tolerance) || !(std::abs(det - 1.0) <= tolerance)) {
      throw InvalidArgument("matrix is not a rotation (orthogonality defect " + std::to_string(orth) +
                            ", det " + std::to_string(det) + ")");
    }
  }

  const Eigen::Matrix3d& matrix() const noexcept { return m_; }
  double operator()(int i, int j) const { return m_(i, j); }

  friend Rotation3 operator*(const Rotation3& a, const Rotation3& b) {
    Rotation3 out;
    out.m_ = a.m_ * b.m_;
    return out;
  }

private:
  Eigen::Matrix3d m_;
};

/// R = cos(psi) I + sin(psi) [u]_x + (1 - cos(psi)) u u^T.
inline Rotation3 axis_angle_to_matrix(const Eigen::Vector3d& u, double psi) {
  if (!(std::abs(u.norm() - 1.0) <= 1e-10)) throw InvalidAxis("rotation axis must be a unit vector");
  Eigen::Matrix3d cross;
  cross << 0.0, -u.z(), u.y(), u.z(), 0.0, -u.x(), -u.y(), u.x(), 0.0;
  const double c = std::cos(psi), s = std::sin(psi);
  return Rotation3(c * Eigen::Matrix3d::Identity() + s * cross + (1.0 - c) * u * u.transpose());
}

/// Rotation angle in [0, pi].
inline double rotation_angle(const Rotation3& r) {
  const double c = 0.5 * (r.matrix().trace() - 1.0);
  return std::acos(std::clamp(c, -1.0, 1.0));
}

/// Unit axis u with r = axis_angle_to_matrix(u, rotation_angle(r)). Returns
/// e_z for the identity; for half turns the sign of u is arbitrary.
inline Eigen::Vector3d rotation_axis(const Rotation3& r) {
  const Eigen::Matrix3d& m = r.matrix();
  const double angle = rotation_angle(r);
  Eigen::Vector3d w(m(2, 1) - m(1, 2), m(0, 2) - m(2, 0), m(1, 0) - m(0, 1));
  if (angle < 1e-12) return Eigen::Vector3d::UnitZ();
  if (angle < std::numbers::pi - 1e-6) return w.normalized();
  // Near a half turn: (R + I)/2 ~ u u^T; take its largest column.
  const Eigen::Matrix3d b = 0.5 * (m + Eigen::Matrix3d::Identity());
  Eigen::Index k = 0;
  b.diagonal().maxCoeff(&k);
  Eigen::Vector3d u = b.col(k).normalized();
  if (u.dot(w) < 0.0) u = -u;
  return u;
}

/// Uniform point on the unit sphere.
inline Eigen::Vector3d sample_sphere(RngStream& rng) {
  for (;;) {
    Eigen::Vector3d g(rng.normal(), rng.normal(), rng.normal());
    const double n = g.norm();
    if (n > 1e-12) return g / n;
  }
}

/// Rotation taking the north pole e_z to `target`: about e_z x target by the
/// angle between them; a fixed half turn about e_x for the antipode.
inline Rotation3 pole_to(const Eigen::Vector3d& target) {
  const Eigen::Vector3d north = Eigen::Vector3d::UnitZ();
  const Eigen::Vector3d axis = north.cross(target);
  const double s = axis.norm();
  const double c = std::clamp(north.dot(target), -1.0, 1.0);
  if (s < 1e-14) {
    return c > 0.0 ? Rotation3() : axis_angle_to_matrix(Eigen::Vector3d::UnitX(), std::numbers::pi);
  }
  return axis_angle_to_matrix(axis / s, std::atan2(s, c));
}

/// Haar rotation by the subgroup algorithm: a uniform rotation about the
/// north pole, then the north pole carried to a uniform point of the sphere.
inline Rotation3 sample_haar_so3(RngStream& rng) {
  const double psi = 2.0 * std::numbers::pi * rng.uniform();
  const Rotation3 spin = axis_angle_to_matrix(Eigen::Vector3d::UnitZ(), psi);
  return pole_to(sample_sphere(rng)) * spin;
}

enum class NaiveAngleRange { FullTurn, HalfTurn };

/// Uniform axis and independent uniform angle. Not Haar: it overweights small
/// rotation angles.
inline Rotation3 sample_naive_so3(RngStream& rng, NaiveAngleRange range = NaiveAngleRange::FullTurn) {
  const Eigen::Vector3d axis = sample_sphere(rng);
  const double span = range == NaiveAngleRange::FullTurn ? 2.0 * std::numbers::pi : std::numbers::pi;
  return axis_angle_to_matrix(axis, span * rng.uniform());
}

/// Haar orthogonal n x n matrix: QR of a Gaussian matrix with the columns of
/// Q rescaled by sign(R_ii).
inline Eigen::MatrixXd sample_haar_orthogonal(int n, RngStream& rng) {
  Eigen::MatrixXd g(n, n);
  for (int j = 0; j < n; ++j) {
    for (int i = 0; i < n; ++i) g(i, j) = rng.normal();
  }
  Eigen::HouseholderQR<Eigen::MatrixXd> qr(g);
  Eigen::MatrixXd q = qr.householderQ();
  const Eigen::MatrixXd r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (int j = 0; j < n; ++j) {
    if (r(j, j) < 0.0) q.col(j) *= -1.0;
  }
  return q;
}

/// Haar special orthogonal n x n matrix: one column negated when det = -1.
inline Eigen::MatrixXd sample_haar_special_orthogonal(int n, RngStream& rng) {
  Eigen::MatrixXd q = sample_haar_orthogonal(n, rng);
  if (q.determinant() < 0.0) q.col(0) *= -1.0;
  return q;
}

namespace detail {

/// Modified Gram-Schmidt on the columns; R has positive real diagonal, so a
/// Gaussian input yields a Haar Q.
inline Eigen::MatrixXcd gram_schmidt(Eigen::MatrixXcd a) {
  const auto n = a.cols();
  for (Eigen::Index j = 0; j < n; ++j) {
    for (Eigen::Index k = 0; k < j; ++k) {
      const std::complex<double> proj = a.col(k).dot(a.col(j));
      a.col(j) -= proj * a.col(k);
    }
    a.col(j) /= a.col(j).norm();
  }
  return a;
}

} // namespace detail

/// Haar unitary n x n matrix.
inline Eigen::MatrixXcd sample_haar_unitary(int n, RngStream& rng) {
  Eigen::MatrixXcd g(n, n);
  const double s = std::sqrt(0.5);
  for (int j = 0; j < n; ++j) {
    for (int i = 0; i < n; ++i) g(i, j) = {s * rng.normal(), s * rng.normal()};
  }
  return detail::gram_schmidt(std::move(g));
}

/// Haar element of the compact symplectic group Sp(2m) = USp(2m), as a
/// 2m x 2m unitary matrix. A quaternionic Gaussian m x m matrix is embedded
/// with each quaternion a + b j as the block [[a, b], [-conj(b), conj(a)]];
/// Gram-Schmidt on the complex columns preserves the block structure because
/// the span of earlier block columns is quaternionic.
inline Eigen::MatrixXcd sample_haar_symplectic(int m, RngStream& rng) {
  Eigen::MatrixXcd g(2 * m, 2 * m);
  const double s = std::sqrt(0.5);
  for (int c = 0; c < m; ++c) {
    for (int r = 0; r < m; ++r) {
      const std::complex<double> a{s * rng.normal(), s * rng.normal()};
      const std::complex<double> b{s * rng.normal(), s * rng.normal()};
      g(2 * r, 2 * c) = a;
      g(2 * r, 2 * c + 1) = b;
      g(2 * r + 1, 2 * c) = -std::conj(b);
      g(2 * r + 1, 2 * c + 1) = std::conj(a);
    }
  }
  return detail::gram_schmidt(std::move(g));
}

namespace detail {

/// Fold eigenvalue arguments |arg| in [0, pi] into m conjugate-pair angles.
/// `drop_trivial` discards the forced eigenvalue 1 of SO(2m+1). Returns false
/// when the result is not a valid generic half spectrum.
inline bool fold_pairs(std::vector<double> args, int m, bool drop_trivial, double tol, std::vector<double>& out) {
  std::sort(args.begin(), args.end());
  if (drop_trivial) args.erase(args.begin());
  if (static_cast<int>(args.size()) != 2 * m) return false;
  out.assign(static_cast<std::size_t>(m), 0.0);
  for (int k = 0; k < m; ++k) {
    const double a = args[static_cast<std::size_t>(2 * k)];
    const double b = args[static_cast<std::size_t>(2 * k + 1)];
    if (std::abs(a - b) > 1e-6) return false;
    out[static_cast<std::size_t>(k)] = 0.5 * (a + b);
  }
  for (double t : out) {
    if (!(t > tol && t < std::numbers::pi - tol)) return false;
  }
  std::vector<double> cosines;
  for (double t : out) cosines.push_back(2.0 * std::cos(t));
  return min_gap(cosines) >= tol;
}

template <typename Matrix>
std::vector<double> eigen_arguments(const Matrix& a) {
  std::vector<double> out;
  if constexpr (std::is_same_v<typename Matrix::Scalar, double>) {
    Eigen::EigenSolver<Eigen::MatrixXd> es(a, false);
    for (const auto& ev : es.eigenvalues()) out.push_back(std::abs(std::arg(ev)));
  } else {
    Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(a, false);
    for (const auto& ev : es.eigenvalues()) out.push_back(std::abs(std::arg(ev)));
  }
  return out;
}

} // namespace detail

/// Eigenvalue angles of a Haar element of SO(2m+1), Sp(2m) or SO(2m), folded
/// into (0, pi) and sorted by descending cosine. Draws whose angles touch the
/// boundary or whose cosines collide within `tolerance` are redrawn.
inline HalfSpectrum sample_haar_spectrum(GroupType group, int m, RngStream& rng, double tolerance = 1e-8) {
  if (m < 1) throw InvalidArgument("sample_haar_spectrum: rank must be >= 1");
  std::vector<double> angles;
  for (int attempt = 0; attempt < 100; ++attempt) {
    std::vector<double> args;
    bool drop_trivial = false;
    switch (group) {
    case GroupType::SoOdd:
      args = detail::eigen_arguments(sample_haar_special_orthogonal(2 * m + 1, rng));
      drop_trivial = true;
      break;
    case GroupType::SoEven:
      args = detail::eigen_arguments(sample_haar_special_orthogonal(2 * m, rng));
      break;
    case GroupType::Sp:
      args = detail::eigen_arguments(sample_haar_symplectic(m, rng));
      break;
    case GroupType::OOdd:
      throw InvalidArgument("sample_haar_spectrum: O(2m+1) is not supported");
    }
    if (detail::fold_pairs(std::move(args), m, drop_trivial, tolerance, angles)) {
      return HalfSpectrum(std::move(angles), group);
    }
  }
  throw DegenerateSpectrum("sample_haar_spectrum: 100 consecutive degenerate draws");
}

/// Eigenphases of a Haar unitary n x n matrix.
inline UnitarySpectrum sample_unitary_spectrum(int n, RngStream& rng) {
  if (n < 1) throw InvalidArgument("sample_unitary_spectrum: dimension must be >= 1");
  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(sample_haar_unitary(n, rng), false);
  std::vector<double> phases;
  for (const auto& ev : es.eigenvalues()) phases.push_back(std::arg(ev));
  return UnitarySpectrum(std::move(phases));
}

/// Angles drawn uniformly in (margin, pi - margin), redrawn until every pair
/// of cosines differs by at least min_gap. Not Haar; used to probe the
/// identities at generic points.
inline HalfSpectrum sample_generic_spectrum(GroupType group, int m, RngStream& rng, double min_gap = 0.05,
                                            double margin = 0.05, int det_sign = 1) {
  for (int attempt = 0; attempt < 10000; ++attempt) {
    std::vector<double> angles(static_cast<std::size_t>(m));
    for (double& t : angles) t = margin + (std::numbers::pi - 2.0 * margin) * rng.uniform();
    std::vector<double> cosines;
    for (double t : angles) cosines.push_back(2.0 * std::cos(t));
    if (detail::min_gap(cosines) >= min_gap) return HalfSpectrum(std::move(angles), group, det_sign);
  }
  throw InvalidArgument("sample_generic_spectrum: separation constraint cannot be met");
}

} // namespace cauchy
