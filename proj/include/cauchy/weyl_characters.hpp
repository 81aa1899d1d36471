#pragma once

// Irreducible characters of the compact classical groups as Weyl determinant
// ratios. The alternants are written over the reals: for x = exp(i theta),
// x^a - x^-a = 2i sin(a theta) and x^a + x^-a = 2 cos(a theta), and the
// scalar factors cancel between numerator and denominator.

#include <cauchy/detail/linalg.hpp>
#include <cauchy/errors.hpp>
#include <cauchy/partitions.hpp>
#include <cauchy/spectrum.hpp>

#include <cmath>
#include <complex>
#include <string>
#include <vector>

namespace cauchy {

struct CharacterOptions {
  /// Denominator determinants with |det| below floor * (max entry)^m are
  /// rejected as degenerate.
  double denominator_floor = 1e-10;
};

namespace detail {

enum class Trig { Sin, Cos };

/// Matrix with entries trig(exponent_j * theta_i): rows index angles,
/// columns index exponents.
inline RealMatrix alternant(const std::vector<double>& angles, const std::vector<double>& exponents,
                            Trig trig) {
  const auto m = static_cast<Eigen::Index>(angles.size());
  RealMatrix a(m, m);
  for (Eigen::Index i = 0; i < m; ++i) {
    for (Eigen::Index j = 0; j < m; ++j) {
      const double arg = exponents[static_cast<std::size_t>(j)] * angles[static_cast<std::size_t>(i)];
      a(i, j) = trig == Trig::Sin ? std::sin(arg) : std::cos(arg);
    }
  }
  return a;
}

/// Exponents lambda_j + m - j + shift for j = 1..m.
inline std::vector<double> shifted_exponents(const Partition& lambda, int m, double shift) {
  const std::vector<int> parts = lambda.padded(static_cast<std::size_t>(m));
  std::vector<double> out(static_cast<std::size_t>(m));
  for (int j = 0; j < m; ++j) {
    out[static_cast<std::size_t>(j)] = parts[static_cast<std::size_t>(j)] + (m - 1 - j) + shift;
  }
  return out;
}

template <typename Derived>
auto checked_denominator(const Eigen::MatrixBase<Derived>& den, double floor, const char* what) {
  const auto d = determinant(den);
  const double scale = std::pow(std::max(max_abs_entry(den), 1e-300), static_cast<double>(den.rows()));
  if (!(std::abs(d) >= floor * scale)) {
    throw DegenerateSpectrum(std::string(what) + ": Weyl denominator " + std::to_string(std::abs(d)) +
                             " below floor");
  }
  return d;
}

inline void require_group(const HalfSpectrum& s, GroupType g, const char* what) {
  if (s.group() != g) {
    throw InvalidArgument(std::string(what) + ": spectrum is tagged " + std::string(to_string(s.group())) +
                          ", expected " + std::string(to_string(g)));
  }
}

inline void require_fits(const Partition& lambda, int m, const char* what) {
  if (lambda.length() > m) {
    throw InvalidPartition(std::string(what) + ": " + lambda.to_string() + " has more than " +
                           std::to_string(m) + " parts");
  }
}

inline double trig_ratio(const Partition& lambda, const HalfSpectrum& s, double shift, Trig trig,
                         const CharacterOptions& opts, const char* what) {
  const int m = s.rank();
  require_fits(lambda, m, what);
  const RealMatrix den = alternant(s.angles(), shifted_exponents(Partition{}, m, shift), trig);
  const double d = checked_denominator(den, opts.denominator_floor, what);
  if (lambda.empty()) return 1.0;
  const RealMatrix num = alternant(s.angles(), shifted_exponents(lambda, m, shift), trig);
  return determinant(num) / d;
}

} // namespace detail

/// Character of SO(2m+1): det(sin((l_j+m-j+1/2) t_i)) / det(sin((m-j+1/2) t_i)).
inline double char_so_odd(const Partition& lambda, const HalfSpectrum& s, const CharacterOptions& opts = {}) {
  detail::require_group(s, GroupType::SoOdd, "char_so_odd");
  return detail::trig_ratio(lambda, s, 0.5, detail::Trig::Sin, opts, "char_so_odd");
}

/// Character of Sp(2m): det(sin((l_j+m-j+1) t_i)) / det(sin((m-j+1) t_i)).
inline double char_sp(const Partition& lambda, const HalfSpectrum& s, const CharacterOptions& opts = {}) {
  detail::require_group(s, GroupType::Sp, "char_sp");
  return detail::trig_ratio(lambda, s, 1.0, detail::Trig::Sin, opts, "char_sp");
}

/// SO(2m) character family used by the type-D kernel identity:
///   chi_lambda = det(cos((l_j+m-j) t_i)) / det(cos((m-j) t_i)).
/// For l_m = 0 this is the irreducible character so_lambda. For l_m > 0 it
/// is so_lambda + so_{lambda^-} in the determinant-ratio convention of
/// char_so_even_pm, which is half the restricted O(2m) character: the
/// exponent-zero column of the denominator contributes a factor 2 that the
/// numerator lacks. At m = 1, chi_(k) = cos(k t).
inline double char_so_even_chi(const Partition& lambda, const HalfSpectrum& s,
                               const CharacterOptions& opts = {}) {
  detail::require_group(s, GroupType::SoEven, "char_so_even_chi");
  return detail::trig_ratio(lambda, s, 0.0, detail::Trig::Cos, opts, "char_so_even_chi");
}

/// The split pair for l_m > 0, sign = +1 for lambda and -1 for lambda^-:
///   [det(x^a + x^-a) -+ det(x^a - x^-a)] / (2 det(x^b + x^-b)).
/// Determinant-ratio convention: each value is half the irreducible SO(2m)
/// character (see char_so_even_chi), and the pair sums to chi_lambda. Over
/// the reals the sine alternant picks up i^m, so for odd m the pair is
/// complex conjugate. Requires m >= 2.
inline std::complex<double> char_so_even_pm(const Partition& lambda, int sign, const HalfSpectrum& s,
                                            const CharacterOptions& opts = {}) {
  detail::require_group(s, GroupType::SoEven, "char_so_even_pm");
  const int m = s.rank();
  if (m < 2) throw InvalidArgument("char_so_even_pm: the split characters need rank m >= 2");
  if (sign != 1 && sign != -1) throw InvalidArgument("char_so_even_pm: sign must be +1 or -1");
  detail::require_fits(lambda, m, "char_so_even_pm");
  if (lambda[static_cast<std::size_t>(m - 1)] == 0) {
    throw InvalidPartition("char_so_even_pm: " + lambda.to_string() + " has fewer than m parts");
  }
  using detail::Trig;
  const auto den = detail::alternant(s.angles(), detail::shifted_exponents(Partition{}, m, 0.0), Trig::Cos);
  const double d = detail::checked_denominator(den, opts.denominator_floor, "char_so_even_pm");
  const auto exps = detail::shifted_exponents(lambda, m, 0.0);
  const double cos_det = detail::determinant(detail::alternant(s.angles(), exps, Trig::Cos));
  const double sin_det = detail::determinant(detail::alternant(s.angles(), exps, Trig::Sin));
  // (2i)^m / 2^m = i^m
  static constexpr std::complex<double> i_pow[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
  const std::complex<double> sin_term = i_pow[m % 4] * sin_det;
  return (cos_det - static_cast<double>(sign) * sin_term) / (2.0 * d);
}

/// Character of O(2m+1) labelled by lambda, with l'_1 + l'_2 <= 2m+1.
/// For det = +1 this is the SO(2m+1) character; for det = -1 the sine
/// alternants become cosine alternants. Labels longer than m are reduced
/// through o_{associated}(g) = det(g) o_lambda(g).
inline double char_o_odd(const Partition& lambda, const HalfSpectrum& s, const CharacterOptions& opts = {}) {
  detail::require_group(s, GroupType::OOdd, "char_o_odd");
  const int m = s.rank();
  double factor = 1.0;
  Partition label = lambda;
  if (lambda.length() > m) {
    label = associated_partition(lambda, 2 * m + 1);
    factor = s.det_sign();
  }
  const auto trig = s.det_sign() == 1 ? detail::Trig::Sin : detail::Trig::Cos;
  return factor * detail::trig_ratio(label, s, 0.5, trig, opts, "char_o_odd");
}

/// Schur polynomial s_lambda at the eigenvalues, via the bialternant
/// det(a_i^(l_j+n-j)) / det(a_i^(n-j)).
inline std::complex<double> char_schur(const Partition& lambda, const UnitarySpectrum& s,
                                       const CharacterOptions& opts = {}) {
  const int n = s.dimension();
  detail::require_fits(lambda, n, "char_schur");
  auto bialternant = [&](const Partition& p) {
    const auto exps = detail::shifted_exponents(p, n, 0.0);
    detail::ComplexMatrix a(n, n);
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) {
        a(i, j) = std::polar(1.0, exps[static_cast<std::size_t>(j)] * s.angles()[static_cast<std::size_t>(i)]);
      }
    }
    return a;
  };
  const auto den = bialternant(Partition{});
  const auto d = detail::checked_denominator(den, opts.denominator_floor, "char_schur");
  if (lambda.empty()) return {1.0, 0.0};
  return detail::determinant(bialternant(lambda)) / d;
}

/// The character series used by the kernel identity of each group: so for
/// SO(2m+1), sp for Sp(2m), chi for SO(2m), o for O(2m+1).
inline double character(const Partition& lambda, const HalfSpectrum& s, const CharacterOptions& opts = {}) {
  switch (s.group()) {
  case GroupType::SoOdd: return char_so_odd(lambda, s, opts);
  case GroupType::Sp: return char_sp(lambda, s, opts);
  case GroupType::SoEven: return char_so_even_chi(lambda, s, opts);
  case GroupType::OOdd: return char_o_odd(lambda, s, opts);
  }
  throw InvalidArgument("unknown group");
}

/// Real-form Weyl denominator of the character family returned by character().
/// Numerator entries are bounded by 1, so m!/|denominator| bounds |character|.
inline double weyl_denominator(const HalfSpectrum& s) {
  using detail::Trig;
  const int m = s.rank();
  double shift = 0.5;
  Trig trig = Trig::Sin;
  switch (s.group()) {
  case GroupType::SoOdd: break;
  case GroupType::Sp: shift = 1.0; break;
  case GroupType::SoEven: shift = 0.0; trig = Trig::Cos; break;
  case GroupType::OOdd: trig = s.det_sign() == 1 ? Trig::Sin : Trig::Cos; break;
  }
  return detail::determinant(detail::alternant(s.angles(), detail::shifted_exponents(Partition{}, m, shift), trig));
}

/// Vandermonde determinant of the eigenvalues, the Schur denominator.
inline std::complex<double> weyl_denominator(const UnitarySpectrum& s) {
  const auto ev = s.eigenvalues();
  std::complex<double> out{1.0, 0.0};
  for (std::size_t i = 0; i < ev.size(); ++i) {
    for (std::size_t j = i + 1; j < ev.size(); ++j) out *= ev[i] - ev[j];
  }
  return out;
}

} // namespace cauchy
