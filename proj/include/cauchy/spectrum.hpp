#pragma once

#include <cauchy/errors.hpp>

#include <bit>
#include <cmath>
#include <complex>
#include <cstddef>
#include <cstdint>
#include <numbers>
#include <string>
#include <string_view>
#include <vector>

namespace cauchy {

/// Compact classical groups whose elements are described by a half spectrum.
enum class GroupType {
  SoOdd,  ///< SO(2m+1)
  Sp,     ///< Sp(2m)
  SoEven, ///< SO(2m)
  OOdd,   ///< O(2m+1)
};

inline std::string_view to_string(GroupType g) {
  switch (g) {
  case GroupType::SoOdd: return "so-odd";
  case GroupType::Sp: return "sp";
  case GroupType::SoEven: return "so-even";
  case GroupType::OOdd: return "o-odd";
  }
  return "?";
}

inline GroupType parse_group(std::string_view name) {
  if (name == "so-odd") return GroupType::SoOdd;
  if (name == "sp") return GroupType::Sp;
  if (name == "so-even") return GroupType::SoEven;
  if (name == "o-odd") return GroupType::OOdd;
  throw InvalidArgument("unknown group '" + std::string(name) + "'");
}

/// The m angles theta_i in (0, pi) of the conjugate eigenvalue pairs
/// exp(+-i theta_i). The trivial eigenvalue of SO(2m+1) and the determinant
/// eigenvalue of O(2m+1) are implicit.
class HalfSpectrum {
public:
  HalfSpectrum(std::vector<double> angles, GroupType group, int det_sign = 1)
      : angles_(std::move(angles)), group_(group), det_sign_(det_sign) {
    if (angles_.empty()) throw InvalidArgument("half spectrum needs at least one angle");
    for (double t : angles_) {
      if (!(t > 0.0 && t < std::numbers::pi)) {
        throw InvalidArgument("half-spectrum angle " + std::to_string(t) +
                              " outside the open interval (0, pi)");
      }
    }
    if (det_sign_ != 1 && det_sign_ != -1) throw InvalidArgument("det_sign must be +1 or -1");
    if (det_sign_ == -1 && group_ != GroupType::OOdd) {
      throw InvalidArgument("det_sign -1 is only meaningful for O(2m+1)");
    }
  }

  int rank() const noexcept { return static_cast<int>(angles_.size()); }
  const std::vector<double>& angles() const noexcept { return angles_; }
  GroupType group() const noexcept { return group_; }
  int det_sign() const noexcept { return det_sign_; }

  /// 2 cos(theta_i), i.e. x_i + 1/x_i.
  std::vector<double> traces() const {
    std::vector<double> out;
    out.reserve(angles_.size());
    for (double t : angles_) out.push_back(2.0 * std::cos(t));
    return out;
  }

  /// Content hash over the bit patterns of the angles, group and sign.
  std::size_t hash() const noexcept {
    std::uint64_t h = 1469598103934665603ULL;
    auto mix = [&](std::uint64_t v) {
      h ^= v;
      h *= 1099511628211ULL;
    };
    for (double t : angles_) mix(std::bit_cast<std::uint64_t>(t));
    mix(static_cast<std::uint64_t>(group_));
    mix(static_cast<std::uint64_t>(det_sign_ + 2));
    return static_cast<std::size_t>(h);
  }

  friend bool operator==(const HalfSpectrum&, const HalfSpectrum&) = default;

private:
  std::vector<double> angles_;
  GroupType group_;
  int det_sign_;
};

/// Eigenphases phi_i in [0, 2 pi) of a unitary matrix.
class UnitarySpectrum {
public:
  explicit UnitarySpectrum(std::vector<double> angles) : angles_(std::move(angles)) {
    if (angles_.empty()) throw InvalidArgument("unitary spectrum needs at least one angle");
    constexpr double two_pi = 2.0 * std::numbers::pi;
    for (double& a : angles_) {
      if (!std::isfinite(a)) throw InvalidArgument("non-finite eigenphase");
      a = std::fmod(a, two_pi);
      if (a < 0.0) a += two_pi;
      if (a >= two_pi) a = 0.0;
    }
  }

  int dimension() const noexcept { return static_cast<int>(angles_.size()); }
  const std::vector<double>& angles() const noexcept { return angles_; }

  std::vector<std::complex<double>> eigenvalues() const {
    std::vector<std::complex<double>> out;
    out.reserve(angles_.size());
    for (double a : angles_) out.push_back(std::polar(1.0, a));
    return out;
  }

  friend bool operator==(const UnitarySpectrum&, const UnitarySpectrum&) = default;

private:
  std::vector<double> angles_;
};

/// Series weight z and the degeneracy tolerance used by kernel evaluation.
/// z = 0 is admitted as the limit convention (only the trivial term).
class KernelParams {
public:
  explicit KernelParams(double z, double degeneracy_tolerance = 1e-8)
      : z_(z), tolerance_(degeneracy_tolerance) {
    if (!(z >= 0.0 && z < 1.0)) throw InvalidArgument("kernel parameter z must lie in [0, 1)");
    if (!(degeneracy_tolerance > 0.0)) throw InvalidArgument("degeneracy tolerance must be positive");
  }

  double z() const noexcept { return z_; }
  double degeneracy_tolerance() const noexcept { return tolerance_; }

private:
  double z_;
  double tolerance_;
};

} // namespace cauchy
