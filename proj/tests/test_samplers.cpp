#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <cmath>
#include <vector>

#include "fiiss/parallel.hpp"
#include "fiiss/random.hpp"
#include "fiiss/samplers.hpp"
#include "fiiss/special.hpp"

using namespace fiiss;

namespace {

struct MeanSe {
  double mean, se;
};

template <typename F>
MeanSe mc_mean(std::size_t n, std::uint64_t seed, std::uint64_t stream, F&& draw) {
  RandomSource src(seed, stream);
  double mean = 0.0, m2 = 0.0;
  for (std::size_t i = 1; i <= n; ++i) {
    const double x = draw(src);
    const double d = x - mean;
    mean += d / static_cast<double>(i);
    m2 += d * (x - mean);
  }
  return {mean, std::sqrt(m2 / (static_cast<double>(n) * (n - 1.0)))};
}

}  // namespace

TEST_CASE("random source replays bit-exactly and separates streams") {
  RandomSource a(42, 7), b(42, 7), c(42, 8), d(43, 7);
  std::vector<std::uint64_t> seq_a, seq_b;
  bool c_differs = false, d_differs = false;
  for (int i = 0; i < 64; ++i) {
    seq_a.push_back(a.next_u64());
    seq_b.push_back(b.next_u64());
    if (c.next_u64() != seq_a.back()) c_differs = true;
    if (d.next_u64() != seq_a.back()) d_differs = true;
  }
  CHECK(seq_a == seq_b);
  CHECK(c_differs);
  CHECK(d_differs);
}

TEST_CASE("uniform draws stay strictly inside (0,1)") {
  RandomSource src(1, 0);
  for (int i = 0; i < 200000; ++i) {
    const double u = src.uniform_open01();
    CHECK(u > 0.0);
    CHECK(u < 1.0);
  }
}

TEST_CASE("stable sampler hits the Laplace transform at s in {0.5,1,2}") {
  const std::size_t n = 1'000'000;
  for (double alpha : {0.3, 0.5, 0.75}) {
    for (double s : {0.5, 1.0, 2.0}) {
      const auto est = mc_mean(n, 2024, 0, [&](RandomSource& src) {
        return std::exp(-s * sample_positive_stable(alpha, src));
      });
      const double target = std::exp(-std::pow(s, alpha));
      CHECK(std::abs(est.mean - target) < 3.0 * est.se);
      CHECK(std::abs(est.mean - target) < 0.003);
    }
  }
}

TEST_CASE("stable sampler agrees with the closed-form law at alpha = 1/2") {
  // at alpha = 1/2 the law with transform exp(-sqrt(s)) is 1/(2 Z^2), Z normal;
  // quantiles of the two samplers must line up
  const std::size_t n = 200000;
  std::vector<double> kanter(n), levy(n);
  RandomSource src(5, 0);
  for (std::size_t i = 0; i < n; ++i) kanter[i] = sample_positive_stable(0.5, src);
  for (std::size_t i = 0; i < n; ++i) {
    // Box-Muller from the same source
    const double r = std::sqrt(-2.0 * std::log(src.uniform_open01()));
    const double z = r * std::cos(2.0 * M_PI * src.uniform_open01());
    levy[i] = 1.0 / (2.0 * z * z);
  }
  std::sort(kanter.begin(), kanter.end());
  std::sort(levy.begin(), levy.end());
  for (double q : {0.1, 0.25, 0.5, 0.75, 0.9}) {
    const auto i = static_cast<std::size_t>(q * (n - 1));
    CHECK(kanter[i] == doctest::Approx(levy[i]).epsilon(0.03));
  }
}

TEST_CASE("samplers replay under a fixed seed and stream") {
  for (int rep = 0; rep < 2; ++rep) {
    RandomSource s1(99, 3), s2(99, 3);
    for (int i = 0; i < 100; ++i) {
      CHECK(sample_positive_stable(0.6, s1) == sample_positive_stable(0.6, s2));
      CHECK(sample_pareto(0.6, s1) == sample_pareto(0.6, s2));
      CHECK(sample_exponential(2.0, s1) == sample_exponential(2.0, s2));
      CHECK(sample_nu_jump(0.6, 1e-3, s1) == sample_nu_jump(0.6, 1e-3, s2));
    }
  }
}

TEST_CASE("pareto sampler matches its tail and quantiles") {
  CHECK(pareto_icdf(0.7, 1.0) == doctest::Approx(1.0));  // lower endpoint
  const double alpha = 0.5;
  const std::size_t n = 1'000'000;
  RandomSource src(7, 0);
  std::vector<double> draws(n);
  for (auto& x : draws) x = sample_pareto(alpha, src);
  CHECK(*std::min_element(draws.begin(), draws.end()) >= 1.0);

  std::sort(draws.begin(), draws.end());
  for (double t : {1.5, 2.0, 4.0, 8.0, 16.0}) {
    const double tail = std::pow(t, -alpha);
    const auto above = static_cast<double>(
        draws.end() - std::upper_bound(draws.begin(), draws.end(), t));
    const double emp = above / static_cast<double>(n);
    const double se = std::sqrt(tail * (1.0 - tail) / static_cast<double>(n));
    CHECK(std::abs(emp - tail) < 3.0 * se);
  }
  const double median = draws[n / 2];
  CHECK(median == doctest::Approx(std::pow(2.0, 1.0 / alpha)).epsilon(0.01));
}

TEST_CASE("exponential sampler mean and rate scaling") {
  const std::size_t n = 1'000'000;
  const auto rate1 = mc_mean(n, 11, 0, [](RandomSource& src) {
    return sample_exponential(1.0, src);
  });
  CHECK(std::abs(rate1.mean - 1.0) < 0.005);
  const auto rate2 = mc_mean(n, 11, 1, [](RandomSource& src) {
    return sample_exponential(2.0, src);
  });
  CHECK(rate2.mean == doctest::Approx(0.5 * rate1.mean).epsilon(0.01));
  CHECK_THROWS_AS(([] {
                    RandomSource src(0, 0);
                    sample_exponential(0.0, src);
                  })(),
                  std::domain_error);
}

TEST_CASE("restricted Levy-jump sampler") {
  const double alpha = 0.5;
  SUBCASE("support and tail ratio") {
    const double eps = 0.25;
    const std::size_t n = 1'000'000;
    RandomSource src(13, 0);
    std::size_t above = 0;
    for (std::size_t i = 0; i < n; ++i) {
      const double x = sample_nu_jump(alpha, eps, src);
      CHECK(x > eps);
      if (x > 2.0 * eps) ++above;
    }
    const double target = nu_tail(alpha, 2.0 * eps) / nu_tail(alpha, eps);
    const double emp = static_cast<double>(above) / static_cast<double>(n);
    CHECK(std::abs(emp - target) < 0.005);
  }
  SUBCASE("large eps concentrates draws near eps") {
    // far out the tail decays like exp(-x/alpha), so the excess beyond eps
    // behaves like an Exp(1/alpha) variable with mean alpha
    RandomSource src(13, 1);
    double excess = 0.0;
    for (int i = 0; i < 1000; ++i) {
      const double x = sample_nu_jump(alpha, 8.0, src);
      CHECK(x > 8.0);
      excess += x - 8.0;
    }
    CHECK(excess / 1000.0 == doctest::Approx(alpha).epsilon(0.15));
  }
  CHECK_THROWS_AS(([] {
                    RandomSource src(0, 0);
                    sample_nu_jump(0.5, 0.0, src);
                  })(),
                  std::domain_error);
}

TEST_CASE("log-modified inter-shot law") {
  // exact tail at the sampled points, monotone, and valid only for alpha >= 0.32
  const double alpha = 0.6;
  CHECK(intershot_tail(IntershotLaw::ParetoLog, alpha, 1.0) == doctest::Approx(1.0));
  for (double t = 1.0; t < 50.0; t += 0.5) {
    CHECK(intershot_tail(IntershotLaw::ParetoLog, alpha, t + 0.5) <
          intershot_tail(IntershotLaw::ParetoLog, alpha, t));
  }
  RandomSource src(17, 0);
  const std::size_t n = 200000;
  std::size_t above4 = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const double x = sample_intershot(IntershotLaw::ParetoLog, alpha, src);
    CHECK(x >= 1.0);
    if (x > 4.0) ++above4;
  }
  const double target = intershot_tail(IntershotLaw::ParetoLog, alpha, 4.0);
  CHECK(static_cast<double>(above4) / n == doctest::Approx(target).epsilon(0.03));
  CHECK_THROWS_AS(intershot_tail(IntershotLaw::ParetoLog, 0.25, 2.0), std::domain_error);
}
