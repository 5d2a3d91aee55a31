#pragma once

#include <cstdint>
#include <vector>

#include "fiiss/empirical.hpp"
#include "fiiss/params.hpp"
#include "fiiss/random.hpp"

namespace fiiss {

// One realization of the killed subordinator Z_alpha with jumps above the
// truncation level eps: a Poisson stream of nu_alpha-jumps stopped at an
// independent unit-rate exponential kill time.  The jumps below eps enter as
// the deterministic drift int_0^eps x nu(dx); dropping them outright shifts
// E int exp(-c Z) by several percent at eps = 1e-4, far above Monte Carlo
// resolution, while the drift-compensated error is O(eps^(2-alpha)).
struct KilledSubordinatorDraw {
  std::vector<double> jump_times;  // strictly increasing, all < kill_time
  std::vector<double> jump_sizes;  // each > eps
  double kill_time = 0.0;
  double eps = 0.0;
  double drift = 0.0;              // small-jump compensation rate
};

KilledSubordinatorDraw simulate_killed_subordinator(double alpha, double eps,
                                                    RandomSource& src);

// int_0^kill exp(-c Z(t)) dt computed exactly: between jumps Z is linear, so
// each segment contributes exp(-c L) (exp(-c mu a) - exp(-c mu b)) / (c mu),
// collapsing to exp(-c L) * (b - a) when the drift mu is zero.
double exp_functional_of(const KilledSubordinatorDraw& z, double c);

// One draw of the exponential functional int_0^inf exp(-c Z_alpha(t)) dt.
double simulate_exp_functional(double alpha, double c, double eps, RandomSource& src);

// n draws of u^(-1) W_alpha(u^(1/alpha)) through the grid engine; by
// self-similarity the law is Mittag-Leffler with parameter alpha whatever u.
EmpiricalSample mittag_leffler_sample(double alpha, std::size_t n, double u,
                                      double t_step, std::uint64_t seed,
                                      std::uint64_t stream_base, int workers);

struct IdentityCheckResult {
  double ks_statistic = 0.0;
  double p_value = 0.0;
  bool pass = false;   // decision at level 0.01
  std::size_t n = 0;
};

// Two-sample KS between exponential-functional draws at c = (alpha+beta)/alpha
// and direct Y(1) marginal draws; the two should share one law.
IdentityCheckResult fiiss_identity_check(const FiissParams& params, std::size_t n,
                                         double eps, double t_step, std::uint64_t seed,
                                         std::uint64_t stream_base, int workers);

struct TailFitResult {
  double slope = 0.0;
  double intercept = 0.0;
  double r2 = 0.0;
  double expected_slope = 0.0;  // 1/(1-alpha)
};

// Least-squares slope of log(-log Phat{Y > x}) against log x over
// [x_lo, x_hi].  Requires at least 20 sample points beyond x_hi
// (window_error otherwise).
TailFitResult tail_fit(const EmpiricalSample& sample, const FiissParams& params,
                       double x_lo, double x_hi);

}  // namespace fiiss
