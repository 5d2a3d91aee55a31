#include "fiiss/lamperti.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "fiiss/parallel.hpp"
#include "fiiss/paths.hpp"
#include "fiiss/samplers.hpp"
#include "fiiss/special.hpp"
#include "fiiss/stats.hpp"

namespace fiiss {

KilledSubordinatorDraw simulate_killed_subordinator(double alpha, double eps,
                                                    RandomSource& src) {
  if (!(eps > 0.0)) {
    throw std::domain_error("simulate_killed_subordinator: eps must be positive");
  }
  KilledSubordinatorDraw z;
  z.eps = eps;
  z.drift = nu_small_jump_mean(alpha, eps);
  z.kill_time = sample_exponential(1.0, src);
  const double rate = nu_tail(alpha, eps);  // Poisson intensity of jumps above eps
  double t = sample_exponential(rate, src);
  while (t < z.kill_time) {
    z.jump_times.push_back(t);
    z.jump_sizes.push_back(sample_nu_jump(alpha, eps, src));
    t += sample_exponential(rate, src);
  }
  return z;
}

double exp_functional_of(const KilledSubordinatorDraw& z, double c) {
  if (!(c > 0.0)) throw std::domain_error("exp_functional_of: c must be positive");
  const double mu = z.drift;
  double integral = 0.0;
  double level = 0.0;  // jump part of Z at the current segment's start
  double prev = 0.0;
  const auto segment = [&](double a, double b) {
    if (mu == 0.0) return std::exp(-c * level) * (b - a);
    return std::exp(-c * level) * (std::exp(-c * mu * a) - std::exp(-c * mu * b)) /
           (c * mu);
  };
  for (std::size_t i = 0; i < z.jump_times.size(); ++i) {
    integral += segment(prev, z.jump_times[i]);
    level += z.jump_sizes[i];
    prev = z.jump_times[i];
  }
  integral += segment(prev, z.kill_time);
  return integral;
}

double simulate_exp_functional(double alpha, double c, double eps, RandomSource& src) {
  return exp_functional_of(simulate_killed_subordinator(alpha, eps, src), c);
}

EmpiricalSample mittag_leffler_sample(double alpha, std::size_t n, double u,
                                      double t_step, std::uint64_t seed,
                                      std::uint64_t stream_base, int workers) {
  if (n < 1) throw std::invalid_argument("mittag_leffler_sample: n must be >= 1");
  if (!(u > 0.0)) throw std::invalid_argument("mittag_leffler_sample: u must be positive");
  const double target = std::pow(u, 1.0 / alpha);
  auto draws = replicate(n, seed, stream_base, workers,
                         [&](std::size_t, RandomSource& src) {
                           return inverse_passage_time(alpha, target, t_step, src) / u;
                         });
  return EmpiricalSample::from_draws(
      std::move(draws),
      {{"alpha", alpha}, {"u", u}, {"t_step", t_step},
       {"n", static_cast<double>(n)}, {"seed", static_cast<double>(seed)}});
}

IdentityCheckResult fiiss_identity_check(const FiissParams& params, std::size_t n,
                                         double eps, double t_step, std::uint64_t seed,
                                         std::uint64_t stream_base, int workers) {
  if (!params.continuous_regime()) {
    throw std::domain_error("fiiss_identity_check: requires beta > -alpha");
  }
  const double c = params.index() / params.alpha;
  auto exp_draws = replicate(n, seed, stream_base, workers,
                             [&](std::size_t, RandomSource& src) {
                               return simulate_exp_functional(params.alpha, c, eps, src);
                             });
  auto direct_draws = replicate(n, seed, stream_base + n, workers,
                                [&](std::size_t, RandomSource& src) {
                                  return fiiss_marginal_draw(params, 1.0, t_step, src);
                                });
  const auto lhs = EmpiricalSample::from_draws(std::move(exp_draws));
  const auto rhs = EmpiricalSample::from_draws(std::move(direct_draws));
  const KsResult ks = ks_two_sample(lhs, rhs);
  return IdentityCheckResult{ks.statistic, ks.p_value, ks.p_value > 0.01, n};
}

TailFitResult tail_fit(const EmpiricalSample& sample, const FiissParams& params,
                       double x_lo, double x_hi) {
  if (!(0.0 < x_lo && x_lo < x_hi)) {
    throw std::invalid_argument("tail_fit: need 0 < x_lo < x_hi");
  }
  if (sample.count_above(x_hi) < 20) {
    throw window_error("tail_fit: fewer than 20 sample points beyond the window");
  }
  constexpr int kPoints = 24;
  std::vector<double> xs(kPoints), ys(kPoints);
  const double ratio = std::log(x_hi / x_lo);
  const auto total = static_cast<double>(sample.n());
  for (int i = 0; i < kPoints; ++i) {
    const double x = x_lo * std::exp(ratio * i / (kPoints - 1));
    xs[i] = x;
    ys[i] = -std::log(static_cast<double>(sample.count_above(x)) / total);
  }
  const FitResult fit = loglog_slope(xs, ys, true, true);
  return TailFitResult{fit.slope, fit.intercept, fit.r2, 1.0 / (1.0 - params.alpha)};
}

}  // namespace fiiss
