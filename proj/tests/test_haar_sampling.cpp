#include <cauchy/haar_sampling.hpp>

#include <catch2/catch_amalgamated.hpp>

#include "oracles.hpp"

#include <functional>
#include <numbers>

using cauchy::GroupType;
using cauchy::Rotation3;
using cauchy::RngStream;
using Catch::Matchers::WithinAbs;

namespace {

constexpr double pi = std::numbers::pi;
constexpr long draws = 100000;
constexpr int bins = 50;

// Pearson GOF p-value of angles in [0, pi] against a CDF, 50 equal bins.
double gof_pvalue(const std::vector<double>& angles, const std::function<double(double)>& cdf) {
  std::vector<long> counts(bins, 0);
  for (double t : angles) {
    const int b = std::min(bins - 1, static_cast<int>(t / pi * bins));
    ++counts[static_cast<std::size_t>(b)];
  }
  std::vector<double> probs(bins);
  for (int b = 0; b < bins; ++b) probs[static_cast<std::size_t>(b)] = cdf((b + 1) * pi / bins) - cdf(b * pi / bins);
  return oracle::chi2_sf(oracle::pearson(counts, probs, static_cast<long>(angles.size())), bins - 1);
}

double haar_cdf(double t) { return (t - std::sin(t)) / pi; }
double uniform_cdf(double t) { return t / pi; }

} // namespace

TEST_CASE("axis-angle construction", "[sampling]") {
  const Eigen::Vector3d u = Eigen::Vector3d(1, 2, 2) / 3.0;
  CHECK((cauchy::axis_angle_to_matrix(u, 0.0).matrix() - Eigen::Matrix3d::Identity()).norm() < 1e-15);
  const auto quarter = cauchy::axis_angle_to_matrix(Eigen::Vector3d::UnitZ(), pi / 2);
  CHECK((quarter.matrix() * Eigen::Vector3d::UnitX() - Eigen::Vector3d::UnitY()).norm() < 1e-15);
  CHECK_THAT(cauchy::rotation_angle(cauchy::axis_angle_to_matrix(u, 0.7)), WithinAbs(0.7, 1e-12));
  CHECK_THAT(cauchy::rotation_angle(cauchy::axis_angle_to_matrix(u, 2.0)), WithinAbs(2.0, 1e-12));
  CHECK(cauchy::rotation_angle(Rotation3()) == 0.0);
  Eigen::Matrix3d half = Eigen::Vector3d(1, -1, -1).asDiagonal();
  CHECK_THAT(cauchy::rotation_angle(Rotation3(half)), WithinAbs(pi, 1e-15));
  CHECK_THROWS_AS(cauchy::axis_angle_to_matrix(Eigen::Vector3d(1, 1, 0), 1.0), cauchy::InvalidAxis);
  CHECK_THROWS_AS(Rotation3(Eigen::Matrix3d(Eigen::Vector3d(1, 1, -1).asDiagonal())), cauchy::InvalidArgument);
}

TEST_CASE("rotation axis round trip", "[sampling]") {
  RngStream rng(31);
  for (int i = 0; i < 200; ++i) {
    const Eigen::Vector3d u = cauchy::sample_sphere(rng);
    const double psi = 0.01 + (pi - 0.02) * rng.uniform();
    const auto r = cauchy::axis_angle_to_matrix(u, psi);
    CHECK((cauchy::rotation_axis(r) - u).norm() < 1e-9);
  }
  const Eigen::Vector3d u = Eigen::Vector3d(0, 0.6, 0.8);
  const auto half = cauchy::axis_angle_to_matrix(u, pi);
  const Eigen::Vector3d got = cauchy::rotation_axis(half);
  CHECK(std::min((got - u).norm(), (got + u).norm()) < 1e-9);
}

TEST_CASE("pole section carries the north pole", "[sampling]") {
  RngStream rng(32);
  for (int i = 0; i < 100; ++i) {
    const Eigen::Vector3d t = cauchy::sample_sphere(rng);
    CHECK((cauchy::pole_to(t).matrix() * Eigen::Vector3d::UnitZ() - t).norm() < 1e-12);
  }
  CHECK((cauchy::pole_to(-Eigen::Vector3d::UnitZ()).matrix() * Eigen::Vector3d::UnitZ() + Eigen::Vector3d::UnitZ())
            .norm() < 1e-12);
  CHECK((cauchy::pole_to(Eigen::Vector3d::UnitZ()).matrix() - Eigen::Matrix3d::Identity()).norm() < 1e-15);
}

TEST_CASE("SO(3) samplers produce rotations", "[sampling]") {
  RngStream rng(33);
  for (int i = 0; i < 1000; ++i) {
    for (const auto& r : {cauchy::sample_haar_so3(rng), cauchy::sample_naive_so3(rng)}) {
      const Eigen::Matrix3d& m = r.matrix();
      CHECK((m.transpose() * m - Eigen::Matrix3d::Identity()).cwiseAbs().maxCoeff() < 1e-12);
      CHECK(std::abs(m.determinant() - 1.0) < 1e-12);
    }
  }
}

TEST_CASE("SO(3) angle distributions", "[sampling][statistical]") {
  RngStream haar_rng(34), naive_rng(35), half_rng(36);
  std::vector<double> haar, naive, naive_half;
  Eigen::Matrix3d haar_mean = Eigen::Matrix3d::Zero(), naive_mean = Eigen::Matrix3d::Zero();
  for (long i = 0; i < draws; ++i) {
    const auto h = cauchy::sample_haar_so3(haar_rng);
    const auto n = cauchy::sample_naive_so3(naive_rng);
    haar.push_back(cauchy::rotation_angle(h));
    naive.push_back(cauchy::rotation_angle(n));
    naive_half.push_back(cauchy::rotation_angle(cauchy::sample_naive_so3(half_rng, cauchy::NaiveAngleRange::HalfTurn)));
    haar_mean += h.matrix();
    naive_mean += n.matrix();
  }
  CHECK(gof_pvalue(haar, haar_cdf) > 0.001);
  CHECK(gof_pvalue(naive, uniform_cdf) > 0.001);
  CHECK(gof_pvalue(naive_half, uniform_cdf) > 0.001);
  CHECK(gof_pvalue(naive, haar_cdf) < 1e-10);

  haar_mean /= static_cast<double>(draws);
  naive_mean /= static_cast<double>(draws);
  const double tol = 5.0 / std::sqrt(static_cast<double>(draws));
  CHECK(haar_mean.cwiseAbs().maxCoeff() < tol);
  CHECK((naive_mean - Eigen::Matrix3d::Identity() / 3.0).cwiseAbs().maxCoeff() < tol);
}

TEST_CASE("Haar orthogonal and unitary matrices", "[sampling]") {
  RngStream rng(37);
  for (int n = 1; n <= 6; ++n) {
    const auto q = cauchy::sample_haar_orthogonal(n, rng);
    CHECK((q.transpose() * q - Eigen::MatrixXd::Identity(n, n)).cwiseAbs().maxCoeff() < 1e-12);
    const auto s = cauchy::sample_haar_special_orthogonal(n, rng);
    CHECK(std::abs(s.determinant() - 1.0) < 1e-12);
    const auto u = cauchy::sample_haar_unitary(n, rng);
    CHECK((u.adjoint() * u - Eigen::MatrixXcd::Identity(n, n)).cwiseAbs().maxCoeff() < 1e-12);
  }
  // Both determinant signs occur for O(n).
  int negative = 0;
  for (int i = 0; i < 200; ++i) negative += cauchy::sample_haar_orthogonal(3, rng).determinant() < 0.0;
  CHECK(negative > 60);
  CHECK(negative < 140);
}

TEST_CASE("Haar symplectic matrices", "[sampling]") {
  RngStream rng(38);
  for (int m = 1; m <= 4; ++m) {
    const auto u = cauchy::sample_haar_symplectic(m, rng);
    const int n = 2 * m;
    CHECK((u.adjoint() * u - Eigen::MatrixXcd::Identity(n, n)).cwiseAbs().maxCoeff() < 1e-12);
    Eigen::MatrixXcd j = Eigen::MatrixXcd::Zero(n, n);
    for (int k = 0; k < m; ++k) {
      j(2 * k, 2 * k + 1) = 1.0;
      j(2 * k + 1, 2 * k) = -1.0;
    }
    CHECK((u.transpose() * j * u - j).cwiseAbs().maxCoeff() < 1e-12);
  }
  // Sp(2) = SU(2): angle density (2/pi) sin^2.
  std::vector<double> angles;
  for (long i = 0; i < draws; ++i) angles.push_back(cauchy::sample_haar_spectrum(GroupType::Sp, 1, rng).angles()[0]);
  CHECK(gof_pvalue(angles, [](double t) { return (t - std::sin(t) * std::cos(t)) / pi; }) > 0.001);
}

TEST_CASE("SO(3) spectrum matches the rotation angle law", "[sampling][statistical]") {
  RngStream rng(39);
  std::vector<double> angles;
  for (long i = 0; i < draws; ++i) angles.push_back(cauchy::sample_haar_spectrum(GroupType::SoOdd, 1, rng).angles()[0]);
  CHECK(gof_pvalue(angles, haar_cdf) > 0.001);
}

TEST_CASE("spectra are valid and ordered", "[sampling]") {
  RngStream rng(40);
  for (auto g : {GroupType::SoOdd, GroupType::Sp, GroupType::SoEven}) {
    for (int m = 1; m <= 4; ++m) {
      for (int i = 0; i < 50; ++i) {
        const auto s = cauchy::sample_haar_spectrum(g, m, rng);
        REQUIRE(s.rank() == m);
        CHECK(s.group() == g);
        for (std::size_t k = 0; k < s.angles().size(); ++k) {
          CHECK(s.angles()[k] > 0.0);
          CHECK(s.angles()[k] < pi);
          if (k > 0) CHECK(std::cos(s.angles()[k - 1]) > std::cos(s.angles()[k]));
        }
      }
    }
  }
  CHECK_THROWS_AS(cauchy::sample_haar_spectrum(GroupType::OOdd, 2, rng), cauchy::InvalidArgument);
  CHECK_THROWS_AS(cauchy::sample_haar_spectrum(GroupType::SoOdd, 0, rng), cauchy::InvalidArgument);
}

TEST_CASE("unitary spectra", "[sampling][statistical]") {
  RngStream rng(41);
  std::vector<double> phases;
  for (long i = 0; i < draws; ++i) phases.push_back(cauchy::sample_unitary_spectrum(1, rng).angles()[0] / (2 * pi));
  // KS critical value for alpha = 0.001 is about 1.95 / sqrt(n).
  CHECK(oracle::ks_uniform(phases) < 1.95 / std::sqrt(static_cast<double>(draws)));

  std::complex<double> trace_sum = 0.0;
  std::vector<double> sq;
  for (long i = 0; i < draws; ++i) {
    std::complex<double> tr = 0.0;
    for (auto e : cauchy::sample_unitary_spectrum(2, rng).eigenvalues()) tr += e;
    trace_sum += tr;
    sq.push_back(std::norm(tr));
  }
  const double n = static_cast<double>(draws);
  CHECK(std::abs(trace_sum / n) < 5.0 / std::sqrt(n));
  double mean = 0.0, var = 0.0;
  for (double v : sq) mean += v;
  mean /= n;
  for (double v : sq) var += (v - mean) * (v - mean);
  var /= n - 1;
  CHECK(std::abs(mean - 1.0) < 5.0 * std::sqrt(var / n));
}

TEST_CASE("streams are reproducible", "[sampling]") {
  RngStream a(77, 3), b(77, 3), c(77, 4);
  for (int i = 0; i < 20; ++i) {
    const auto ra = cauchy::sample_haar_so3(a);
    const auto rb = cauchy::sample_haar_so3(b);
    const auto rc = cauchy::sample_haar_so3(c);
    CHECK(ra.matrix() == rb.matrix());
    CHECK(ra.matrix() != rc.matrix());
  }
  RngStream s1(5), s2(5);
  CHECK(cauchy::sample_haar_spectrum(GroupType::SoOdd, 3, s1) == cauchy::sample_haar_spectrum(GroupType::SoOdd, 3, s2));
}

TEST_CASE("generic spectra respect the separation", "[sampling]") {
  RngStream rng(42);
  for (int i = 0; i < 100; ++i) {
    const auto s = cauchy::sample_generic_spectrum(GroupType::SoOdd, 3, rng, 0.2, 0.1);
    const auto tr = s.traces();
    for (std::size_t a = 0; a < tr.size(); ++a) {
      CHECK(s.angles()[a] >= 0.1);
      CHECK(s.angles()[a] <= pi - 0.1);
      for (std::size_t b = a + 1; b < tr.size(); ++b) CHECK(std::abs(tr[a] - tr[b]) >= 0.2);
    }
  }
  CHECK_THROWS_AS(cauchy::sample_generic_spectrum(GroupType::SoOdd, 3, rng, 3.0), cauchy::InvalidArgument);
}
