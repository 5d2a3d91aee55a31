#include "fiiss/stats.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "fiiss/parallel.hpp"
#include "fiiss/paths.hpp"
#include "fiiss/special.hpp"

namespace fiiss {
namespace {

double simpson(const std::function<double(double)>& f, double a, double b, double fa,
               double fm, double fb, double whole, double tol, int depth) {
  const double m = 0.5 * (a + b);
  const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
  const double flm = f(lm), frm = f(rm);
  const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
  const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
  const double delta = left + right - whole;
  if (depth <= 0 || std::abs(delta) <= 15.0 * tol) {
    return left + right + delta / 15.0;
  }
  return simpson(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1) +
         simpson(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
}

double integrate(const std::function<double(double)>& f, double a, double b, double tol) {
  if (a >= b) return 0.0;
  const double fa = f(a), fb = f(b), fm = f(0.5 * (a + b));
  const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
  return simpson(f, a, b, fa, fm, fb, whole, tol, 48);
}

double median_of(std::vector<double> v) {
  const std::size_t n = v.size();
  std::sort(v.begin(), v.end());
  return n % 2 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

}  // namespace

double kolmogorov_q(double x) {
  if (x <= 0.0) return 1.0;
  if (x < 1.18) {
    // theta-dual series, accurate where the direct one converges slowly
    const double v = M_PI * M_PI / (8.0 * x * x);
    double sum = 0.0;
    for (int k = 1; k <= 7; k += 2) sum += std::exp(-v * k * k);
    return 1.0 - std::sqrt(2.0 * M_PI) / x * sum;
  }
  double sum = 0.0;
  for (int k = 1; k <= 8; ++k) {
    const double term = std::exp(-2.0 * k * k * x * x);
    sum += (k % 2 ? term : -term);
    if (term < 1e-16) break;
  }
  return std::max(0.0, 2.0 * sum);
}

KsResult ks_two_sample(const EmpiricalSample& a, const EmpiricalSample& b) {
  const auto& xs = a.values;
  const auto& ys = b.values;
  if (xs.empty() || ys.empty()) throw std::invalid_argument("ks_two_sample: empty sample");
  const double n = static_cast<double>(xs.size());
  const double m = static_cast<double>(ys.size());
  std::size_t i = 0, j = 0;
  double d = 0.0;
  while (i < xs.size() && j < ys.size()) {
    const double x = std::min(xs[i], ys[j]);
    while (i < xs.size() && xs[i] <= x) ++i;
    while (j < ys.size() && ys[j] <= x) ++j;
    d = std::max(d, std::abs(static_cast<double>(i) / n - static_cast<double>(j) / m));
  }
  const double effective = std::sqrt(n * m / (n + m));
  return KsResult{d, kolmogorov_q(effective * d)};
}

KsResult ks_one_sample(const EmpiricalSample& a,
                       const std::function<double(double)>& cdf) {
  const auto& xs = a.values;
  if (xs.empty()) throw std::invalid_argument("ks_one_sample: empty sample");
  const double n = static_cast<double>(xs.size());
  double d = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const double f = cdf(xs[i]);
    d = std::max(d, std::max(f - static_cast<double>(i) / n,
                             static_cast<double>(i + 1) / n - f));
  }
  return KsResult{d, kolmogorov_q(std::sqrt(n) * d)};
}

MomentEstimate moment_estimate(const EmpiricalSample& a, int n) {
  if (n < 1) throw std::domain_error("moment_estimate: n must be >= 1");
  const auto& xs = a.values;
  const double count = static_cast<double>(xs.size());
  double mean = 0.0;
  for (double x : xs) mean += std::pow(x, n);
  mean /= count;
  if (xs.size() == 1) return MomentEstimate{mean, 0.0};
  double ss = 0.0;
  for (double x : xs) {
    const double d = std::pow(x, n) - mean;
    ss += d * d;
  }
  return MomentEstimate{mean, std::sqrt(ss / (count * (count - 1.0)))};
}

FitResult loglog_slope(std::span<const double> xs, std::span<const double> ys,
                       bool log_x, bool log_y) {
  if (xs.size() != ys.size() || xs.size() < 3) {
    throw std::invalid_argument("loglog_slope: need >= 3 matched points");
  }
  const std::size_t n = xs.size();
  std::vector<double> u(n), v(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (log_x && !(xs[i] > 0.0)) throw std::domain_error("loglog_slope: log of nonpositive x");
    if (log_y && !(ys[i] > 0.0)) throw std::domain_error("loglog_slope: log of nonpositive y");
    u[i] = log_x ? std::log(xs[i]) : xs[i];
    v[i] = log_y ? std::log(ys[i]) : ys[i];
  }
  double mu = 0.0, mv = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    mu += u[i];
    mv += v[i];
  }
  mu /= static_cast<double>(n);
  mv /= static_cast<double>(n);
  double suv = 0.0, suu = 0.0, svv = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    suv += (u[i] - mu) * (v[i] - mv);
    suu += (u[i] - mu) * (u[i] - mu);
    svv += (v[i] - mv) * (v[i] - mv);
  }
  if (suu == 0.0) throw std::invalid_argument("loglog_slope: degenerate abscissae");
  const double slope = suv / suu;
  const double intercept = mv - slope * mu;
  double r2 = 1.0;
  if (svv > 0.0) {
    double ss_res = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      const double resid = v[i] - (intercept + slope * u[i]);
      ss_res += resid * resid;
    }
    r2 = 1.0 - ss_res / svv;
  }
  return FitResult{slope, intercept, r2};
}

double dynkin_lamperti_cdf(double alpha, double x) {
  if (!(alpha > 0.0 && alpha < 1.0)) {
    throw std::domain_error("dynkin_lamperti_cdf: alpha must lie in (0,1)");
  }
  if (x <= 0.0) return 0.0;
  if (x >= 1.0) return 1.0;
  constexpr double kTol = 1e-11;
  const double norm = std::sin(M_PI * alpha) / M_PI;
  // left endpoint: t = s^p with p = 1/(1-alpha) flattens t^(-alpha)
  const double p = 1.0 / (1.0 - alpha);
  const double m = std::min(x, 0.5);
  const auto left_integrand = [&](double s) {
    return p * std::pow(1.0 - std::pow(s, p), alpha - 1.0);
  };
  double integral = integrate(left_integrand, 0.0, std::pow(m, 1.0 - alpha), kTol);
  if (x > 0.5) {
    // right endpoint: t = 1 - v^q with q = 1/alpha flattens (1-t)^(alpha-1)
    const double q = 1.0 / alpha;
    const auto right_integrand = [&](double v) {
      return q * std::pow(1.0 - std::pow(v, q), -alpha);
    };
    integral += integrate(right_integrand, std::pow(1.0 - x, alpha),
                          std::pow(0.5, alpha), kTol);
  }
  return std::min(1.0, norm * integral);
}

LilScanResult lil_ratio_scan(const FiissParams& params, std::span<const double> u_grid,
                             std::size_t n_paths, double t_step, std::uint64_t seed,
                             std::uint64_t stream_base, int workers) {
  if (u_grid.empty()) throw std::invalid_argument("lil_ratio_scan: empty u grid");
  for (double u : u_grid) {
    if (!(u > M_E)) throw std::invalid_argument("lil_ratio_scan: u grid must exceed e");
  }
  const double u_max = *std::max_element(u_grid.begin(), u_grid.end());
  const double index = params.index();
  const double alpha = params.alpha;
  std::vector<double> grid(u_grid.begin(), u_grid.end());

  auto per_path = replicate(
      n_paths, seed, stream_base, workers,
      [&](std::size_t, RandomSource& src) {
        const GridPath d = simulate_subordinator_until(alpha, u_max, t_step, src);
        auto y = fiiss_from_subordinator(d, params, grid);
        for (std::size_t i = 0; i < grid.size(); ++i) {
          const double u = grid[i];
          y[i] /= std::pow(u, index) * std::pow(std::log(std::log(u)), 1.0 - alpha);
        }
        return y;
      });

  LilScanResult result;
  result.u_grid = grid;
  result.lil_const = lil_constant(params);
  result.median_ratio.resize(grid.size());
  result.max_ratio_per_u.resize(grid.size());
  std::vector<double> column(n_paths);
  for (std::size_t i = 0; i < grid.size(); ++i) {
    for (std::size_t pth = 0; pth < n_paths; ++pth) column[pth] = per_path[pth][i];
    result.median_ratio[i] = median_of(column);
    result.max_ratio_per_u[i] = *std::max_element(column.begin(), column.end());
  }
  result.max_ratio =
      *std::max_element(result.max_ratio_per_u.begin(), result.max_ratio_per_u.end());
  result.min_max_over_u =
      *std::min_element(result.max_ratio_per_u.begin(), result.max_ratio_per_u.end());
  return result;
}

bool VerificationReport::all_pass() const noexcept {
  return std::all_of(entries.begin(), entries.end(),
                     [](const ReportEntry& e) { return e.pass; });
}

}  // namespace fiiss
