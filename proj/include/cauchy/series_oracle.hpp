#pragma once

// Brute-force evaluation of the Cauchy series sum_lambda z^|lambda| chi(g) chi(h)
// by summing characters over all partitions up to a weight L, together with a
// certified bound on the discarded remainder. This is the reference the
// closed-form kernels are checked against; it only depends on the character
// module.
//
// Tail bound: there are at most (n+1)^(m-1) partitions of n into at most m
// parts, and every character in the family satisfies |chi| <= m!/|D| where D
// is the real-form Weyl denominator (each term of the numerator's permutation
// expansion is bounded by 1). Hence
//   |remainder| <= B_x B_y sum_{n>L} (n+1)^(m-1) z^n.

#include <cauchy/detail/linalg.hpp>
#include <cauchy/errors.hpp>
#include <cauchy/partitions.hpp>
#include <cauchy/spectrum.hpp>
#include <cauchy/weyl_characters.hpp>

#include <cmath>
#include <complex>
#include <functional>
#include <limits>
#include <string>
#include <unordered_map>

namespace cauchy {

enum class TruncationMode { Fixed, Auto };

struct TruncationPolicy {
  TruncationMode mode = TruncationMode::Auto;
  /// Fixed mode: the truncation weight L.
  int max_weight = 0;
  /// Auto mode: target tail bound. Fixed mode: maximum acceptable tail bound.
  double tolerance = 1e-12;
  /// Auto mode gives up beyond this weight.
  int max_weight_cap = 400;

  static TruncationPolicy automatic(double tol, int cap = 400) {
    return {TruncationMode::Auto, 0, tol, cap};
  }
  static TruncationPolicy fixed(int weight, double max_tail = std::numeric_limits<double>::infinity()) {
    return {TruncationMode::Fixed, weight, max_tail, 400};
  }
};

template <typename T>
struct SeriesResult {
  T value{};
  double tail_bound = 0.0;
  int max_weight = 0;
  std::size_t terms = 0;
};

namespace detail {

/// Upper bound on sum_{n > last} term(n) for a positive term sequence whose
/// successive ratios are eventually non-increasing (polynomial times z^n).
inline double tail_sum(int last, const std::function<double(int)>& term) {
  double sum = 0.0;
  for (int n = last + 1; n < last + 1000000; ++n) {
    const double t = term(n);
    if (t == 0.0) {
      if (n > last + 64) return sum;
      continue;
    }
    const double r = term(n + 1) / t;
    if (r < 1.0) {
      const double rest = t / (1.0 - r);
      if (rest <= 1e-3 * (sum + rest) || r < 0.5) return sum + rest;
    }
    sum += t;
  }
  return std::numeric_limits<double>::infinity();
}

inline double falling_factorial(int top, int count) {
  double out = 1.0;
  for (int k = 0; k < count; ++k) out *= static_cast<double>(top - k);
  return out;
}

inline double factorial(int n) { return falling_factorial(n, n); }

inline int binom2(int m) { return m * (m - 1) / 2; }

} // namespace detail

/// m!/|Weyl denominator|: a bound on every character of the family at s.
inline double character_bound(const HalfSpectrum& s) {
  return detail::factorial(s.rank()) / std::abs(weyl_denominator(s));
}

inline double character_bound(const UnitarySpectrum& s) {
  return detail::factorial(s.dimension()) / std::abs(weyl_denominator(s));
}

/// Bound on the remainder of the z-weighted series beyond weight L.
inline double series_tail_bound(double z, int m, double bound_x, double bound_y, int last) {
  if (z == 0.0) return 0.0;
  return bound_x * bound_y *
         detail::tail_sum(last, [&](int n) { return std::pow(n + 1.0, m - 1) * std::pow(z, n); });
}

/// Bound on the remainder of the m-times differentiated series beyond weight L.
inline double weighted_tail_bound(double z, int m, double bound_x, double bound_y, int last) {
  if (z == 0.0) return 0.0;
  const int c = detail::binom2(m);
  return bound_x * bound_y * detail::tail_sum(last, [&](int n) {
           const double w = detail::falling_factorial(c + n, m);
           if (w == 0.0) return 0.0;
           return std::pow(n + 1.0, m - 1) * w * std::pow(z, c + n - m);
         });
}

/// Smallest L whose series tail bound is below tol.
inline int auto_truncation(const KernelParams& p, int m, double bound_x, double bound_y, double tol,
                           int cap = 400) {
  if (!(tol > 0.0)) throw InvalidArgument("auto_truncation: tolerance must be positive");
  for (int last = 0; last <= cap; ++last) {
    if (series_tail_bound(p.z(), m, bound_x, bound_y, last) < tol) return last;
  }
  throw TruncationTooSmall("auto_truncation: tail bound still above " + std::to_string(tol) +
                           " at weight cap " + std::to_string(cap));
}

/// Characters of one spectrum memoized by partition; lives for one evaluation.
class CharacterTable {
public:
  explicit CharacterTable(const HalfSpectrum& s, CharacterOptions opts = {}) : spectrum_(s), opts_(opts) {}

  double operator()(const Partition& lambda) {
    auto it = cache_.find(lambda);
    if (it != cache_.end()) return it->second;
    const double v = character(lambda, spectrum_, opts_);
    cache_.emplace(lambda, v);
    return v;
  }

  const HalfSpectrum& spectrum() const noexcept { return spectrum_; }

private:
  const HalfSpectrum& spectrum_;
  CharacterOptions opts_;
  std::unordered_map<Partition, double> cache_;
};

namespace detail {

inline void require_pair(const HalfSpectrum& x, const HalfSpectrum& y, const char* what) {
  if (x.group() != y.group()) throw InvalidArgument(std::string(what) + ": spectra of different groups");
  if (x.rank() != y.rank()) throw InvalidArgument(std::string(what) + ": spectra of different rank");
}

inline int resolve_weight(const TruncationPolicy& policy, const std::function<double(int)>& tail,
                          const char* what) {
  if (policy.mode == TruncationMode::Auto) {
    if (!(policy.tolerance > 0.0)) throw InvalidArgument(std::string(what) + ": tolerance must be positive");
    for (int last = 0; last <= policy.max_weight_cap; ++last) {
      if (tail(last) < policy.tolerance) return last;
    }
    throw TruncationTooSmall(std::string(what) + ": no weight up to " + std::to_string(policy.max_weight_cap) +
                             " certifies tolerance " + std::to_string(policy.tolerance));
  }
  if (policy.max_weight < 0) throw InvalidArgument(std::string(what) + ": negative truncation weight");
  const double t = tail(policy.max_weight);
  if (t > policy.tolerance) {
    throw TruncationTooSmall(std::string(what) + ": tail bound " + std::to_string(t) + " at L=" +
                             std::to_string(policy.max_weight) + " exceeds " + std::to_string(policy.tolerance));
  }
  return policy.max_weight;
}

} // namespace detail

/// sum over |lambda| <= L, at most m parts, of z^|lambda| chi(x) chi(y), with
/// chi the family selected by the spectra's group (see character()). Tables
/// may be shared with other evaluations on the same spectra.
inline SeriesResult<double> truncated_kernel(CharacterTable& table_x, CharacterTable& table_y,
                                             const KernelParams& p, const TruncationPolicy& policy) {
  const HalfSpectrum& x = table_x.spectrum();
  const HalfSpectrum& y = table_y.spectrum();
  detail::require_pair(x, y, "truncated_kernel");
  const int m = x.rank();
  const double bx = character_bound(x);
  const double by = character_bound(y);
  auto tail = [&](int last) { return series_tail_bound(p.z(), m, bx, by, last); };
  const int last = detail::resolve_weight(policy, tail, "truncated_kernel");

  SeriesResult<double> out;
  detail::CompensatedSum<double> acc;
  for (int n = 0; n <= last; ++n) {
    const double zn = std::pow(p.z(), n);
    if (zn == 0.0 && n > 0) break;
    for (const Partition& lambda : partitions_of_weight(m, n)) {
      acc.add(zn * table_x(lambda) * table_y(lambda));
      ++out.terms;
    }
  }
  out.value = acc.value();
  out.tail_bound = tail(last);
  out.max_weight = last;
  return out;
}

inline SeriesResult<double> truncated_kernel(const HalfSpectrum& x, const HalfSpectrum& y, const KernelParams& p,
                                             const TruncationPolicy& policy, CharacterOptions opts = {}) {
  CharacterTable tx(x, opts);
  if (x == y) return truncated_kernel(tx, tx, p, policy);
  CharacterTable ty(y, opts);
  return truncated_kernel(tx, ty, p, policy);
}

/// sum_lambda z^|lambda| s_lambda(a) s_lambda(b), or with s_lambda(b) replaced
/// by its complex conjugate when conjugate_second is set.
inline SeriesResult<std::complex<double>> truncated_kernel(const UnitarySpectrum& a, const UnitarySpectrum& b,
                                                           const KernelParams& p, bool conjugate_second,
                                                           const TruncationPolicy& policy,
                                                           CharacterOptions opts = {}) {
  if (a.dimension() != b.dimension()) throw InvalidArgument("truncated_kernel: dimension mismatch");
  const int n_dim = a.dimension();
  const double ba = character_bound(a);
  const double bb = character_bound(b);
  auto tail = [&](int last) { return series_tail_bound(p.z(), n_dim, ba, bb, last); };
  const int last = detail::resolve_weight(policy, tail, "truncated_kernel");

  SeriesResult<std::complex<double>> out;
  detail::CompensatedSum<std::complex<double>> acc;
  for (int n = 0; n <= last; ++n) {
    const double zn = std::pow(p.z(), n);
    if (zn == 0.0 && n > 0) break;
    for (const Partition& lambda : partitions_of_weight(n_dim, n)) {
      const auto sa = char_schur(lambda, a, opts);
      auto sb = char_schur(lambda, b, opts);
      if (conjugate_second) sb = std::conj(sb);
      acc.add(zn * sa * sb);
      ++out.terms;
    }
  }
  out.value = acc.value();
  out.tail_bound = tail(last);
  out.max_weight = last;
  return out;
}

/// The m-times z-differentiated SO(2m+1) series
///   sum_lambda (c+|l|)!/(c+|l|-m)! z^(c+|l|-m) so_l(x) so_l(y),  c = m(m-1)/2.
inline SeriesResult<double> weighted_truncated_series(CharacterTable& table_x, CharacterTable& table_y,
                                                      const KernelParams& p, const TruncationPolicy& policy) {
  const HalfSpectrum& x = table_x.spectrum();
  const HalfSpectrum& y = table_y.spectrum();
  detail::require_pair(x, y, "weighted_truncated_series");
  if (x.group() != GroupType::SoOdd) throw InvalidArgument("weighted_truncated_series: SO(2m+1) spectra required");
  if (p.z() > 0.9) throw InvalidArgument("weighted_truncated_series: z must not exceed 0.9");
  const int m = x.rank();
  const int c = detail::binom2(m);
  const double bx = character_bound(x);
  const double by = character_bound(y);
  auto tail = [&](int last) { return weighted_tail_bound(p.z(), m, bx, by, last); };
  const int last = detail::resolve_weight(policy, tail, "weighted_truncated_series");

  SeriesResult<double> out;
  detail::CompensatedSum<double> acc;
  for (int n = 0; n <= last; ++n) {
    const double w = detail::falling_factorial(c + n, m);
    if (w == 0.0) continue;
    const double coeff = w * std::pow(p.z(), c + n - m);
    for (const Partition& lambda : partitions_of_weight(m, n)) {
      acc.add(coeff * table_x(lambda) * table_y(lambda));
      ++out.terms;
    }
  }
  out.value = acc.value();
  out.tail_bound = tail(last);
  out.max_weight = last;
  return out;
}

inline SeriesResult<double> weighted_truncated_series(const HalfSpectrum& x, const HalfSpectrum& y,
                                                      const KernelParams& p, const TruncationPolicy& policy,
                                                      CharacterOptions opts = {}) {
  CharacterTable tx(x, opts);
  if (x == y) return weighted_truncated_series(tx, tx, p, policy);
  CharacterTable ty(y, opts);
  return weighted_truncated_series(tx, ty, p, policy);
}

} // namespace cauchy
