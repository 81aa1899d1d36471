// Property suite: kernel symmetry and permutation invariance, positive
// semidefinite Gram matrices, diagonal dominance, Monte Carlo character
// orthogonality under Haar measure, and partition counts. Runs standalone
// with `test_properties` or via ctest.

#include <cauchy/cauchy.hpp>

#include <catch2/catch_amalgamated.hpp>

#include <Eigen/Eigenvalues>

#include <map>
#include <numbers>

using cauchy::GroupType;
using cauchy::HalfSpectrum;
using cauchy::KernelParams;
using cauchy::RngStream;

namespace {

bool close(double a, double b) { return std::abs(a - b) <= 1e-12 * std::max(1.0, std::abs(b)); }

HalfSpectrum reversed(const HalfSpectrum& s) {
  auto a = s.angles();
  std::reverse(a.begin(), a.end());
  return HalfSpectrum(std::move(a), s.group(), s.det_sign());
}

long count_recursive(int n, int k) {
  if (n == 0) return 1;
  if (n < 0 || k == 0) return 0;
  return count_recursive(n, k - 1) + count_recursive(n - k, k);
}

} // namespace

TEST_CASE("kernel symmetry and permutation invariance", "[properties]") {
  RngStream rng(81);
  for (auto g : {GroupType::SoOdd, GroupType::Sp, GroupType::SoEven, GroupType::OOdd}) {
    for (int m = 1; m <= 4; ++m) {
      for (int trial = 0; trial < 10; ++trial) {
        const int sx = g == GroupType::OOdd && trial % 2 ? -1 : 1;
        const auto x = cauchy::sample_generic_spectrum(g, m, rng, 0.05, 0.05, sx);
        const auto y = cauchy::sample_generic_spectrum(g, m, rng, 0.05, 0.05, g == GroupType::OOdd ? -sx : 1);
        for (double z : {0.2, 0.7}) {
          const KernelParams p(z);
          const double k = cauchy::kernel(x, y, p);
          CHECK(close(cauchy::kernel(y, x, p), k));
          CHECK(close(cauchy::kernel(reversed(x), y, p), k));
          CHECK(close(cauchy::kernel(x, reversed(y), p), k));
        }
      }
    }
  }
  for (int n = 1; n <= 4; ++n) {
    const auto a = cauchy::sample_unitary_spectrum(n, rng), b = cauchy::sample_unitary_spectrum(n, rng);
    auto rev = a.angles();
    std::reverse(rev.begin(), rev.end());
    const KernelParams p(0.6);
    const auto k = cauchy::kernel_unitary(a, b, p, true);
    CHECK(std::abs(cauchy::kernel_unitary(cauchy::UnitarySpectrum(rev), b, p, true) - k) <= 1e-12 * std::abs(k));
    CHECK(std::abs(cauchy::kernel_unitary(b, a, p, true) - std::conj(k)) <= 1e-12 * std::abs(k));
  }
}

TEST_CASE("Gram matrices are positive semidefinite with diagonal above 1", "[properties]") {
  RngStream rng(82);
  constexpr int n = 20;
  for (auto g : {GroupType::SoOdd, GroupType::Sp, GroupType::SoEven}) {
    for (int m = 1; m <= 3; ++m) {
      for (double z : {0.3, 0.8}) {
        std::vector<HalfSpectrum> pts;
        for (int i = 0; i < n; ++i) pts.push_back(cauchy::sample_haar_spectrum(g, m, rng));
        Eigen::MatrixXd gram(n, n);
        for (int i = 0; i < n; ++i) {
          for (int j = 0; j < n; ++j) gram(i, j) = cauchy::kernel(pts[i], pts[j], KernelParams(z));
        }
        const Eigen::MatrixXd sym = 0.5 * (gram + gram.transpose());
        const double scale = std::max(1.0, sym.cwiseAbs().maxCoeff());
        INFO("group " << cauchy::to_string(g) << " m=" << m << " z=" << z);
        CHECK(Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd>(sym).eigenvalues().minCoeff() >= -1e-8 * scale);
        for (int i = 0; i < n; ++i) CHECK(gram(i, i) > 1.0);
      }
    }
  }
  std::vector<cauchy::UnitarySpectrum> us;
  for (int i = 0; i < n; ++i) us.push_back(cauchy::sample_unitary_spectrum(3, rng));
  Eigen::MatrixXcd gram(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) gram(i, j) = cauchy::kernel_unitary(us[i], us[j], KernelParams(0.5), true);
  }
  CHECK(Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd>(gram).eigenvalues().minCoeff() >= -1e-8);
  for (int i = 0; i < n; ++i) CHECK(gram(i, i).real() > 1.0);
}

TEST_CASE("character orthogonality under Haar measure", "[properties][statistical]") {
  constexpr long draws = 100000;
  for (auto g : {GroupType::SoOdd, GroupType::Sp}) {
    for (int m = 1; m <= 2; ++m) {
      RngStream rng(83 + static_cast<int>(g) * 10 + m);
      const auto labels = cauchy::enumerate_partitions(m, 3);
      const std::size_t k = labels.size();
      std::vector<double> sum(k * k, 0.0), sumsq(k * k, 0.0);
      std::vector<double> chars(k);
      for (long d = 0; d < draws; ++d) {
        const auto s = cauchy::sample_haar_spectrum(g, m, rng);
        for (std::size_t a = 0; a < k; ++a) chars[a] = cauchy::character(labels[a], s);
        for (std::size_t a = 0; a < k; ++a) {
          for (std::size_t b = a; b < k; ++b) {
            const double v = chars[a] * chars[b];
            sum[a * k + b] += v;
            sumsq[a * k + b] += v * v;
          }
        }
      }
      for (std::size_t a = 0; a < k; ++a) {
        for (std::size_t b = a; b < k; ++b) {
          const double mean = sum[a * k + b] / draws;
          const double var = sumsq[a * k + b] / draws - mean * mean;
          const double se = std::sqrt(var / draws);
          INFO(cauchy::to_string(g) << " m=" << m << " " << labels[a].to_string() << " x " << labels[b].to_string()
                                    << ": mean " << mean << ", se " << se);
          CHECK(std::abs(mean - (a == b ? 1.0 : 0.0)) <= 5.0 * se + 1e-12);
        }
      }
    }
  }
}

TEST_CASE("partition counts match the recursion", "[properties]") {
  for (int k = 1; k <= 5; ++k) {
    std::map<int, long> counts;
    for (const auto& p : cauchy::enumerate_partitions(k, 25)) ++counts[p.weight()];
    for (int n = 0; n <= 25; ++n) CHECK(counts[n] == count_recursive(n, k));
  }
}
