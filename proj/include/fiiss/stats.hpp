#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "fiiss/empirical.hpp"
#include "fiiss/params.hpp"

namespace fiiss {

struct KsResult {
  double statistic = 0.0;
  double p_value = 0.0;
};

// Survival function of the Kolmogorov distribution,
// Q(x) = 2 sum_{k>=1} (-1)^(k-1) exp(-2 k^2 x^2), with the theta-dual series
// for small arguments.
double kolmogorov_q(double x);

// Two-sided two-sample Kolmogorov-Smirnov statistic with the asymptotic
// p-value (no small-sample correction).
KsResult ks_two_sample(const EmpiricalSample& a, const EmpiricalSample& b);

// One-sample statistic against a cdf that is nondecreasing on the sample range.
KsResult ks_one_sample(const EmpiricalSample& a, const std::function<double(double)>& cdf);

struct MomentEstimate {
  double mean = 0.0;
  double std_error = 0.0;
};

// Sample mean and standard error of x^n.
MomentEstimate moment_estimate(const EmpiricalSample& a, int n);

struct FitResult {
  double slope = 0.0;
  double intercept = 0.0;
  double r2 = 0.0;
};

// Ordinary least squares after optional log transforms of either axis.
FitResult loglog_slope(std::span<const double> xs, std::span<const double> ys,
                       bool log_x, bool log_y);

// CDF of Beta(1-alpha, alpha), the Dynkin-Lamperti undershoot law with density
// sin(pi*alpha)/pi * x^(-alpha) (1-x)^(alpha-1).  Computed by adaptive
// quadrature after power substitutions that remove both endpoint
// singularities.
double dynkin_lamperti_cdf(double alpha, double x);

struct LilScanResult {
  std::vector<double> u_grid;
  std::vector<double> median_ratio;      // per u, median across paths
  std::vector<double> max_ratio_per_u;   // per u, max across paths
  double max_ratio = 0.0;                // over all paths and u
  double min_max_over_u = 0.0;           // min over u of the per-u max
  double lil_const = 0.0;                // c_{alpha,beta}
};

// Empirical scan of Y(u) / (u^(alpha+beta) (log log u)^(1-alpha)) over a grid
// of u > e and many paths.  A bounded-envelope diagnostic: the almost-sure
// limsup c_{alpha,beta} is a limit statement, so the scan only brackets it.
LilScanResult lil_ratio_scan(const FiissParams& params, std::span<const double> u_grid,
                             std::size_t n_paths, double t_step, std::uint64_t seed,
                             std::uint64_t stream_base, int workers);

// Named check results; pass holds iff `statistic relation threshold` does.
struct ReportEntry {
  std::string name;
  double statistic = 0.0;
  double threshold = 0.0;
  std::string relation;  // "<", "<=", ">", ">=", "~" (|stat-threshold| small)
  bool pass = false;
  std::uint64_t n = 0;
  std::uint64_t seed = 0;
  std::string params;
};

struct VerificationReport {
  std::vector<ReportEntry> entries;

  void add(ReportEntry e) { entries.push_back(std::move(e)); }
  bool all_pass() const noexcept;
};

}  // namespace fiiss
