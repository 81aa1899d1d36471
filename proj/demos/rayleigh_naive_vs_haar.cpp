// Rayleigh statistic for naive Euler-angle rotations against Haar rotations,
// plus a closed-form kernel evaluation checked against its series.

#include <cauchy/cauchy.hpp>

#include <cstdio>
#include <numbers>

int main() {
  using namespace cauchy;

  for (long n : {20L, 200L, 1500L}) {
    RngStream naive_rng(7, 0), haar_rng(7, 1), sims(7, 2);
    std::vector<Rotation3> naive, haar;
    for (long i = 0; i < n; ++i) {
      naive.push_back(sample_naive_so3(naive_rng));
      haar.push_back(sample_haar_so3(haar_rng));
    }
    const double t_naive = rayleigh_statistic(naive), t_haar = rayleigh_statistic(haar);
    const auto mc = rayleigh_pvalue(t_naive, PValueMethod::MonteCarlo, n, 999, &sims);
    std::printf("N=%-5ld naive T_R %9.2f  p(chi2_9) %.3g  p(MC) %.3g | Haar T_R %6.2f  p %.3f\n", n, t_naive,
                rayleigh_asymptotic_pvalue(t_naive), mc.p_value, t_haar, rayleigh_asymptotic_pvalue(t_haar));
  }

  const HalfSpectrum x({0.4, 2.1}, GroupType::SoOdd), y({1.3, 2.8}, GroupType::SoOdd);
  const KernelParams p(0.6);
  const auto series = truncated_kernel(x, y, p, TruncationPolicy::automatic(1e-12));
  std::printf("SO(5) kernel at z=0.6: closed form %.15f, series %.15f (L=%d, tail %.1e)\n", kernel(x, y, p),
              series.value, series.max_weight, series.tail_bound);
}
