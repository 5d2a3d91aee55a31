#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

#include "fiiss/parallel.hpp"
#include "fiiss/paths.hpp"
#include "fiiss/special.hpp"
#include "fiiss/stats.hpp"

using namespace fiiss;

namespace {

const GridPath kHandPath{0.0, 0.5, {0.0, 1.0, 2.5}};

EmpiricalSample sample_of(std::vector<double> draws) {
  return EmpiricalSample::from_draws(std::move(draws));
}

}  // namespace

TEST_CASE("subordinator grid simulation") {
  RandomSource src(3, 0);
  const GridPath d = simulate_subordinator(0.6, 1.0, 1e-3, src);
  CHECK(d.values[0] == 0.0);
  CHECK(d.size() == 1001);
  for (std::size_t i = 1; i < d.size(); ++i) CHECK(d.values[i] > d.values[i - 1]);
  CHECK_THROWS_AS(simulate_subordinator(0.6, 1.0, 2.0, src), std::invalid_argument);
  CHECK_THROWS_AS(simulate_subordinator(0.6, 1e9, 1e-3, src), resource_error);
}

TEST_CASE("subordinator increments carry the right Laplace transform") {
  // E exp(-D(1)) = exp(-Gamma(1-alpha)), independent of the grid spacing
  for (double alpha : {0.5, 0.75}) {
    const std::size_t n = 20000;
    auto draws = replicate(n, 101, 0, 0, [&](std::size_t, RandomSource& src) {
      const GridPath d = simulate_subordinator(alpha, 1.0, 1e-3, src);
      return std::exp(-d.values.back());
    });
    double mean = 0.0;
    for (double x : draws) mean += x;
    mean /= static_cast<double>(n);
    double var = 0.0;
    for (double x : draws) var += (x - mean) * (x - mean);
    const double se = std::sqrt(var / (static_cast<double>(n) * (n - 1.0)));
    CHECK(std::abs(mean - std::exp(-gamma_fn(1.0 - alpha))) < 3.0 * se);
  }
}

TEST_CASE("path inversion follows the min-index rule") {
  CHECK(invert_at(kHandPath, -1.0) == 0.0);
  CHECK(invert_at(kHandPath, 0.5) == doctest::Approx(0.5));   // one step
  CHECK(invert_at(kHandPath, 1.7) == doctest::Approx(1.0));   // two steps
  CHECK_THROWS_AS(invert_at(kHandPath, 2.5), std::out_of_range);
  CHECK_THROWS_AS(invert_at(kHandPath, 3.0), std::out_of_range);

  const UniformGrid grid{-0.2, 0.2, 12};  // [-0.2, 2.0]
  const GridPath w = invert_path(kHandPath, grid);
  CHECK(w.values[0] == 0.0);                        // u < 0
  CHECK(w.values[1] == doctest::Approx(0.5));       // u = 0: min-index rule, one-step bias
  CHECK(w.values[2] == doctest::Approx(0.5));
  for (std::size_t i = 1; i < w.size(); ++i) CHECK(w.values[i] >= w.values[i - 1]);
  CHECK_THROWS_AS(invert_path(kHandPath, UniformGrid{0.0, 1.0, 4}), std::out_of_range);
}

TEST_CASE("memory-free passage time equals the stored-path inversion") {
  for (double u : {-1.0, 0.0, 0.3, 1.0}) {
    RandomSource a(21, 5), b(21, 5);
    const double fast = inverse_passage_time(0.7, u, 1e-2, a);
    const GridPath d = simulate_subordinator_until(0.7, std::max(u, 0.1), 1e-2, b);
    if (u < 0.0) {
      CHECK(fast == 0.0);
    } else {
      CHECK(fast == invert_at(d, u));
    }
  }
}

TEST_CASE("inverse subordinator moments and self-similarity") {
  const double alpha = 0.75;
  const std::size_t n = 30000;
  auto w1 = replicate(n, 303, 0, 0, [&](std::size_t, RandomSource& src) {
    return inverse_passage_time(alpha, 1.0, 1e-3, src);
  });
  const double mean = std::accumulate(w1.begin(), w1.end(), 0.0) / static_cast<double>(n);
  CHECK(mean == doctest::Approx(mittag_leffler_moment(alpha, 1)).epsilon(0.03));

  auto w2 = replicate(n, 303, n, 0, [&](std::size_t, RandomSource& src) {
    return inverse_passage_time(alpha, 2.0, 1e-3, src) / std::pow(2.0, alpha);
  });
  const KsResult ks = ks_two_sample(sample_of(std::move(w2)), sample_of(std::move(w1)));
  CHECK(ks.p_value > 0.01);

  RandomSource src(303, 2 * n);
  const GridPath w = simulate_inverse_subordinator(alpha, 1.0, 1e-2, 1e-3, src);
  for (std::size_t i = 1; i < w.size(); ++i) CHECK(w.values[i] >= w.values[i - 1]);
  CHECK(w.values.back() >= 0.0);
}

TEST_CASE("time-integral form: hand values and the beta = 0 reduction") {
  const FiissParams linear(0.5, 1.0);
  const GridPath d{0.0, 1.0, {0.0, 1.0, 2.5}};
  const std::vector<double> u_grid{0.0, 2.0};
  const auto y = fiiss_from_subordinator(d, linear, u_grid);
  CHECK(y[0] == 0.0);                       // Y(0) = 0
  CHECK(y[1] == doctest::Approx(3.0));      // (2-0) + (2-1), times step 1

  // beta = 0 gives bit-identical values to the inverted path on u > 0
  RandomSource src(77, 0);
  const GridPath path = simulate_subordinator_until(0.6, 1.0, 1e-3, src);
  const UniformGrid grid{0.05, 0.05, 19};
  const GridPath w = invert_path(path, grid);
  const auto counts = fiiss_from_subordinator(path, FiissParams(0.6, 0.0), grid.points());
  for (std::size_t i = 0; i < grid.n; ++i) CHECK(counts[i] == w.values[i]);
}

TEST_CASE("Riemann-Liouville form") {
  const std::vector<double> u_grid{0.25, 0.5, 1.0};
  SUBCASE("flat paths integrate exactly") {
    const GridPath zero{0.0, 0.125, std::vector<double>(9, 0.0)};
    const GridPath one{0.0, 0.125, std::vector<double>(9, 1.0)};
    for (double beta : {0.4, 1.0, 1.7}) {
      const auto y0 = fiiss_riemann_liouville(zero, beta, u_grid);
      for (double v : y0) CHECK(v == 0.0);
      const auto y1 = fiiss_riemann_liouville(one, beta, u_grid);
      for (std::size_t i = 0; i < u_grid.size(); ++i) {
        CHECK(y1[i] == doctest::Approx(std::pow(u_grid[i], beta)).epsilon(1e-12));
      }
    }
  }
  SUBCASE("cross-validates the time-integral form within 1%") {
    const FiissParams params(0.75, 0.5);
    RandomSource src(9, 0);
    const GridPath d = simulate_subordinator_until(params.alpha, 1.0, 1e-4, src);
    const GridPath w = invert_path(d, UniformGrid::covering(1.0, 1e-4));
    const std::vector<double> us{0.4, 0.7, 1.0};
    const auto direct = fiiss_from_subordinator(d, params, us);
    const auto rl = fiiss_riemann_liouville(w, params.beta, us);
    for (std::size_t i = 0; i < us.size(); ++i) {
      CHECK(rl[i] == doctest::Approx(direct[i]).epsilon(0.01));
    }
  }
  CHECK_THROWS_AS(fiiss_riemann_liouville(kHandPath, 0.0, u_grid), std::domain_error);
}

TEST_CASE("Marchaud form") {
  SUBCASE("constant path collapses to the boundary term") {
    const GridPath flat{0.0, 0.1, std::vector<double>(11, 3.0)};
    const FiissParams params(0.75, -0.5);
    const std::vector<double> us{0.0, 0.3, 1.0};
    const auto y = fiiss_marchaud(flat, params, us);
    CHECK(y[0] == 0.0);
    CHECK(y[1] == doctest::Approx(std::pow(0.3, -0.5) * 3.0).epsilon(1e-12));
    CHECK(y[2] == doctest::Approx(3.0).epsilon(1e-12));
  }
  SUBCASE("cross-validates the time-integral form within 2% at step 1e-4") {
    const FiissParams params(0.75, -0.5);
    RandomSource src(10, 0);
    const GridPath d = simulate_subordinator_until(params.alpha, 1.0, 1e-4, src);
    const GridPath w = invert_path(d, UniformGrid::covering(1.0, 1e-4));
    const std::vector<double> us{0.4, 0.7, 1.0};
    const auto direct = fiiss_from_subordinator(d, params, us);
    const auto marchaud = fiiss_marchaud(w, params, us);
    for (std::size_t i = 0; i < us.size(); ++i) {
      CHECK(marchaud[i] == doctest::Approx(direct[i]).epsilon(0.02));
    }
  }
  CHECK_THROWS_AS(fiiss_marchaud(kHandPath, FiissParams(0.75, 0.5), std::vector<double>{1.0}),
                  std::domain_error);
}

TEST_CASE("marginal draw reduces to the passage time at beta = 0") {
  RandomSource a(15, 2), b(15, 2);
  const double y = fiiss_marginal_draw(FiissParams(0.65, 0.0), 1.0, 1e-3, a);
  const double w = inverse_passage_time(0.65, 1.0, 1e-3, b);
  CHECK(y == w);
}

TEST_CASE("grid maxima: divergence below the critical line, stability above") {
  const std::vector<std::size_t> ladder{256, 512, 1024, 2048};
  SUBCASE("beta <= -alpha diverges along refinements") {
    const auto scan = divergence_scan(FiissParams(0.75, -1.5), 0.25, 0.75, ladder, 30,
                                      1e-3, 404, 0, 0);
    for (std::size_t i = 1; i < scan.median_max.size(); ++i) {
      CHECK(scan.median_max[i] > scan.median_max[i - 1]);
    }
  }
  SUBCASE("beta > -alpha stabilizes") {
    const auto scan = divergence_scan(FiissParams(0.75, -0.5), 0.25, 0.75, ladder, 30,
                                      1e-3, 405, 0, 0);
    for (std::size_t i = 1; i < scan.median_max.size(); ++i) {
      CHECK(scan.median_max[i] / scan.median_max[i - 1] == doctest::Approx(1.0).epsilon(0.15));
    }
  }
  SUBCASE("fixed u stays finite even in the divergent regime") {
    auto draws = replicate(50, 406, 0, 0, [&](std::size_t, RandomSource& src) {
      return fiiss_marginal_draw(FiissParams(0.75, -1.5), 0.5, 1e-3, src);
    });
    for (double y : draws) CHECK(std::isfinite(y));
  }
}

TEST_CASE("scaling exponent of the marginal mean recovers alpha + beta") {
  // mean |Y(h)| is exactly h^(alpha+beta) E Y(1) in the continuum; the grid
  // estimate over dyadic h in [2^-10, 2^-4] must give the exponent to 0.1
  for (auto [alpha, beta] : {std::pair{0.75, -0.5}, {0.5, 0.25}}) {
    const FiissParams params(alpha, beta);
    std::vector<double> hs;
    for (int j = 10; j >= 4; --j) hs.push_back(std::pow(2.0, -j));
    const std::size_t n = 400;
    auto per_path = replicate(n, 515, 0, 0, [&](std::size_t, RandomSource& src) {
      const GridPath d = simulate_subordinator_until(alpha, hs.back(), 1e-6, src);
      return fiiss_from_subordinator(d, params, hs);
    });
    std::vector<double> mean_abs(hs.size(), 0.0);
    for (const auto& path : per_path) {
      for (std::size_t j = 0; j < hs.size(); ++j) mean_abs[j] += std::abs(path[j]);
    }
    for (double& m : mean_abs) m /= static_cast<double>(n);
    const FitResult fit = loglog_slope(hs, mean_abs, true, true);
    CHECK(fit.slope == doctest::Approx(alpha + beta).epsilon(0.1 / (alpha + beta)));
  }
}

TEST_CASE("halving both steps moves the Y(1) mean by less than the MC error") {
  // the bar is the n = 1e4 Monte Carlo standard error; the mean change is
  // estimated at larger n so the comparison has resolution
  const FiissParams params(0.75, -0.5);
  const std::size_t n = 60000;
  auto coarse = replicate(n, 616, 0, 0, [&](std::size_t, RandomSource& src) {
    return fiiss_marginal_draw(params, 1.0, 1e-3, src);
  });
  auto fine = replicate(n, 616, n, 0, [&](std::size_t, RandomSource& src) {
    return fiiss_marginal_draw(params, 1.0, 5e-4, src);
  });
  auto mean_sd = [](const std::vector<double>& xs) {
    const double n_d = static_cast<double>(xs.size());
    double mean = 0.0;
    for (double x : xs) mean += x;
    mean /= n_d;
    double var = 0.0;
    for (double x : xs) var += (x - mean) * (x - mean);
    return std::pair{mean, std::sqrt(var / (n_d - 1.0))};
  };
  const auto [m1, sd1] = mean_sd(coarse);
  const auto [m2, sd2] = mean_sd(fine);
  const double se_at_1e4 = std::max(sd1, sd2) / 100.0;
  CHECK(std::abs(m1 - m2) < se_at_1e4);
}
