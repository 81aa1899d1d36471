#pragma once

#include <cauchy/errors.hpp>

#include <algorithm>
#include <cstddef>
#include <functional>
#include <initializer_list>
#include <numeric>
#include <ostream>
#include <string>
#include <vector>

namespace cauchy {

/// Non-increasing sequence of non-negative integers. Trailing zeros are
/// dropped on construction, so (2,0) and (2) compare equal.
class Partition {
public:
  Partition() = default;

  Partition(std::initializer_list<int> parts) : Partition(std::vector<int>(parts)) {}

  explicit Partition(std::vector<int> parts) : parts_(std::move(parts)) {
    for (std::size_t i = 0; i < parts_.size(); ++i) {
      if (parts_[i] < 0) {
        throw InvalidPartition("partition parts must be non-negative");
      }
      if (i > 0 && parts_[i] > parts_[i - 1]) {
        throw InvalidPartition("partition parts must be non-increasing");
      }
    }
    while (!parts_.empty() && parts_.back() == 0) {
      parts_.pop_back();
    }
  }

  /// Nonzero parts only.
  const std::vector<int>& parts() const noexcept { return parts_; }

  /// Number of nonzero parts.
  int length() const noexcept { return static_cast<int>(parts_.size()); }

  int weight() const noexcept { return std::accumulate(parts_.begin(), parts_.end(), 0); }

  bool empty() const noexcept { return parts_.empty(); }

  /// i-th part (0-based), zero beyond the length.
  int operator[](std::size_t i) const noexcept { return i < parts_.size() ? parts_[i] : 0; }

  /// Parts padded with zeros to exactly `size` entries. Requires length() <= size.
  std::vector<int> padded(std::size_t size) const {
    if (parts_.size() > size) {
      throw InvalidPartition("partition " + to_string() + " has more than " +
                             std::to_string(size) + " parts");
    }
    std::vector<int> out(parts_);
    out.resize(size, 0);
    return out;
  }

  std::string to_string() const {
    std::string s = "(";
    for (std::size_t i = 0; i < parts_.size(); ++i) {
      if (i) s += ",";
      s += std::to_string(parts_[i]);
    }
    return s + ")";
  }

  friend bool operator==(const Partition&, const Partition&) = default;
  friend auto operator<=>(const Partition&, const Partition&) = default;

  friend std::ostream& operator<<(std::ostream& os, const Partition& p) { return os << p.to_string(); }

private:
  std::vector<int> parts_;
};

/// Conjugate partition: result[i] = #{j : parts[j] > i}.
inline Partition transpose(const Partition& lambda) {
  if (lambda.empty()) return {};
  std::vector<int> out(static_cast<std::size_t>(lambda[0]), 0);
  for (int part : lambda.parts()) {
    for (int i = 0; i < part; ++i) ++out[static_cast<std::size_t>(i)];
  }
  return Partition(std::move(out));
}

/// Every partition with at most `max_parts` parts and weight at most
/// `max_weight`, grouped by weight ascending and lexicographically decreasing
/// within a weight.
inline std::vector<Partition> enumerate_partitions(int max_parts, int max_weight) {
  if (max_parts < 1) throw InvalidArgument("enumerate_partitions: max_parts must be >= 1");
  if (max_weight < 0) throw InvalidArgument("enumerate_partitions: max_weight must be >= 0");

  std::vector<Partition> out;
  std::vector<int> current;
  std::function<void(int, int)> fill = [&](int remaining, int cap) {
    if (remaining == 0) {
      out.emplace_back(current);
      return;
    }
    if (static_cast<int>(current.size()) == max_parts) return;
    for (int p = std::min(remaining, cap); p >= 1; --p) {
      current.push_back(p);
      fill(remaining - p, p);
      current.pop_back();
    }
  };
  for (int n = 0; n <= max_weight; ++n) fill(n, n);
  return out;
}

/// Partitions of exactly `weight` into at most `max_parts` parts, in the same
/// order enumerate_partitions uses within one weight.
inline std::vector<Partition> partitions_of_weight(int max_parts, int weight) {
  std::vector<Partition> out;
  std::vector<int> current;
  std::function<void(int, int)> fill = [&](int remaining, int cap) {
    if (remaining == 0) {
      out.emplace_back(current);
      return;
    }
    if (static_cast<int>(current.size()) == max_parts) return;
    for (int p = std::min(remaining, cap); p >= 1; --p) {
      current.push_back(p);
      fill(remaining - p, p);
      current.pop_back();
    }
  };
  fill(weight, weight);
  return out;
}

/// O(n) label pairing: for lambda with transpose(lambda)[0] <= n/2 this is the
/// partition whose conjugate is (n - l'_1, l'_2, l'_3, ...). The map is an
/// involution on labels with l'_1 + l'_2 <= n.
inline Partition associated_partition(const Partition& lambda, int n) {
  Partition conj = transpose(lambda);
  if (conj[0] + conj[1] > n) {
    throw InvalidPartition(lambda.to_string() + " does not label a representation of O(" +
                           std::to_string(n) + ")");
  }
  std::vector<int> cols(conj.parts());
  if (cols.empty()) cols.push_back(0);
  cols[0] = n - cols[0];
  std::sort(cols.begin(), cols.end(), std::greater<>());
  return transpose(Partition(std::move(cols)));
}

} // namespace cauchy

template <>
struct std::hash<cauchy::Partition> {
  std::size_t operator()(const cauchy::Partition& p) const noexcept {
    std::size_t h = 0x9e3779b97f4a7c15ULL;
    for (int part : p.parts()) {
      h ^= std::hash<int>{}(part) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    }
    return h;
  }
};
