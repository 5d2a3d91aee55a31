#include "fiiss/paths.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "fiiss/parallel.hpp"
#include "fiiss/samplers.hpp"
#include "fiiss/special.hpp"

namespace fiiss {
namespace {

double increment_scale(double alpha, double step) {
  // increment = (Gamma(1-alpha)*step)^(1/alpha) * S gives the increment
  // Laplace transform exp(-Gamma(1-alpha)*step*s^alpha)
  return std::pow(gamma_fn(1.0 - alpha) * step, 1.0 / alpha);
}

double median_of(std::vector<double> v) {
  const std::size_t n = v.size();
  std::sort(v.begin(), v.end());
  return n % 2 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

}  // namespace

GridPath simulate_subordinator(double alpha, double horizon, double step,
                               RandomSource& src) {
  if (!(step > 0.0) || !(step < horizon)) {
    throw std::invalid_argument("simulate_subordinator: need 0 < step < horizon");
  }
  const double n_real = std::ceil(horizon / step);
  if (n_real > static_cast<double>(kMaxPathPoints)) {
    throw resource_error("simulate_subordinator: horizon/step exceeds grid cap");
  }
  const auto n_steps = static_cast<std::size_t>(n_real);
  const double scale = increment_scale(alpha, step);
  GridPath path{0.0, step, std::vector<double>(n_steps + 1)};
  path.values[0] = 0.0;
  for (std::size_t i = 1; i <= n_steps; ++i) {
    path.values[i] = path.values[i - 1] + scale * sample_positive_stable(alpha, src);
  }
  return path;
}

GridPath simulate_subordinator_until(double alpha, double target, double step,
                                     RandomSource& src) {
  if (!(step > 0.0) || !(target > 0.0)) {
    throw std::invalid_argument("simulate_subordinator_until: need positive step, target");
  }
  // expected reach time is E W(target) = m1 * target^alpha; refuse upfront
  // when even twice that cannot fit under the grid cap
  const double expected_points =
      mittag_leffler_moment(alpha, 1) * std::pow(target, alpha) / step;
  if (expected_points > 0.5 * static_cast<double>(kMaxPathPoints)) {
    throw resource_error("simulate_subordinator_until: target/step exceeds grid cap");
  }
  const double scale = increment_scale(alpha, step);
  GridPath path{0.0, step, {0.0}};
  while (path.values.back() <= target) {
    if (path.values.size() >= kMaxPathPoints) {
      throw resource_error("simulate_subordinator_until: grid cap reached");
    }
    path.values.push_back(path.values.back() + scale * sample_positive_stable(alpha, src));
  }
  return path;
}

double inverse_passage_time(double alpha, double u, double step, RandomSource& src) {
  if (u < 0.0) return 0.0;
  if (!(step > 0.0)) throw std::invalid_argument("inverse_passage_time: step must be positive");
  const double scale = increment_scale(alpha, step);
  double d = 0.0;
  std::size_t k = 0;
  while (d <= u) {
    d += scale * sample_positive_stable(alpha, src);
    if (++k >= kMaxPathPoints) {
      throw resource_error("inverse_passage_time: grid cap reached");
    }
  }
  return step * static_cast<double>(k);
}

double invert_at(const GridPath& d, double u) {
  if (u < 0.0) return 0.0;
  const auto it = std::upper_bound(d.values.begin(), d.values.end(), u);
  if (it == d.values.end()) {
    throw std::out_of_range("invert_at: u beyond the simulated subordinator's reach");
  }
  return d.step * static_cast<double>(it - d.values.begin());
}

GridPath invert_path(const GridPath& d, const UniformGrid& u_grid) {
  if (u_grid.n < 2) throw std::invalid_argument("invert_path: grid needs >= 2 points");
  GridPath w{u_grid.origin, u_grid.step, std::vector<double>(u_grid.n)};
  std::size_t idx = 0;  // first index with d.values[idx] > u, walked forward
  for (std::size_t i = 0; i < u_grid.n; ++i) {
    const double u = u_grid.point(i);
    if (u < 0.0) {
      w.values[i] = 0.0;
      continue;
    }
    while (idx < d.values.size() && d.values[idx] <= u) ++idx;
    if (idx == d.values.size()) {
      throw std::out_of_range("invert_path: grid exceeds the subordinator's reach");
    }
    w.values[i] = d.step * static_cast<double>(idx);
  }
  return w;
}

GridPath simulate_inverse_subordinator(double alpha, double u_max, double u_step,
                                       double t_step, RandomSource& src) {
  if (!(u_step > 0.0) || !(t_step > 0.0)) {
    throw std::invalid_argument("simulate_inverse_subordinator: steps must be positive");
  }
  const GridPath d = simulate_subordinator_until(alpha, u_max, t_step, src);
  return invert_path(d, UniformGrid::covering(u_max, u_step));
}

namespace {

// kernel sum over path values strictly below u; half-integer exponents hit
// this loop billions of times in the refinement scans, so they bypass pow
template <typename Kernel>
double kernel_sum(const std::vector<double>& values, double u, Kernel k) {
  const auto stop = std::lower_bound(values.begin(), values.end(), u);
  double acc = 0.0;
  for (auto it = values.begin(); it != stop; ++it) acc += k(u - *it);
  return acc;
}

double singular_power_sum(const std::vector<double>& values, double u, double beta) {
  if (beta == 0.0) {
    return static_cast<double>(std::lower_bound(values.begin(), values.end(), u) -
                               values.begin());
  }
  if (beta == -0.5) return kernel_sum(values, u, [](double x) { return 1.0 / std::sqrt(x); });
  if (beta == -1.5) {
    return kernel_sum(values, u, [](double x) { return 1.0 / (x * std::sqrt(x)); });
  }
  if (beta == 0.5) return kernel_sum(values, u, [](double x) { return std::sqrt(x); });
  if (beta == 1.0) return kernel_sum(values, u, [](double x) { return x; });
  return kernel_sum(values, u, [beta](double x) { return std::pow(x, beta); });
}

}  // namespace

std::vector<double> fiiss_from_subordinator(const GridPath& d, const FiissParams& params,
                                            std::span<const double> u_grid) {
  std::vector<double> out(u_grid.size());
  for (std::size_t j = 0; j < u_grid.size(); ++j) {
    // strictly below u: the node d.values[i] == u is excluded
    out[j] = d.step * singular_power_sum(d.values, u_grid[j], params.beta);
  }
  return out;
}

std::vector<double> fiiss_riemann_liouville(const GridPath& w, double beta,
                                            std::span<const double> u_grid) {
  if (!(beta > 0.0)) {
    throw std::domain_error("fiiss_riemann_liouville: requires beta > 0");
  }
  if (w.origin != 0.0) {
    throw std::invalid_argument("fiiss_riemann_liouville: path must start at 0");
  }
  std::vector<double> out(u_grid.size());
  for (std::size_t j = 0; j < u_grid.size(); ++j) {
    const double u = u_grid[j];
    if (!(u > 0.0)) {
      out[j] = 0.0;
      continue;
    }
    // Per cell [a,b] with W linear, the kernel integrates exactly:
    //   int_a^b beta (u-y)^(beta-1) W(y) dy = W(a) P + m Q,
    //   P = (u-a)^b - (u-b)^b,
    //   Q = (u-a) P - ((u-a)^(b+1) - (u-b)^(b+1)) beta/(beta+1).
    double acc = 0.0;
    const std::size_t cells = w.size() - 1;
    for (std::size_t i = 0; i < cells; ++i) {
      const double a = w.point(i);
      if (a >= u) break;
      const double b = std::min(w.point(i + 1), u);
      const double wa = w.values[i];
      const double wb = (b < w.point(i + 1)) ? w.interpolate(b) : w.values[i + 1];
      const double sa = u - a, sb = u - b;
      const double pa = std::pow(sa, beta), pb = std::pow(sb, beta);
      const double p = pa - pb;
      const double q = sa * p - (pa * sa - pb * sb) * beta / (beta + 1.0);
      const double m = (wb - wa) / (b - a);
      acc += wa * p + m * q;
    }
    out[j] = acc;
  }
  return out;
}

std::vector<double> fiiss_marchaud(const GridPath& w, const FiissParams& params,
                                   std::span<const double> u_grid) {
  if (params.regime != Regime::NegativeRegular) {
    throw std::domain_error("fiiss_marchaud: requires -alpha < beta < 0");
  }
  if (w.origin != 0.0) {
    throw std::invalid_argument("fiiss_marchaud: path must start at 0");
  }
  const double beta = params.beta;
  const double step = w.step;
  std::vector<double> out(u_grid.size());
  for (std::size_t j = 0; j < u_grid.size(); ++j) {
    const double u = u_grid[j];
    if (!(u > 0.0)) {
      out[j] = 0.0;
      continue;
    }
    const double wu = w.interpolate(u);
    double acc = std::pow(u, beta) * wu;
    // cells [j*step, (j+1)*step) carry the left-endpoint increment
    // W(u) - W(u - j*step); the cell at 0 contributes nothing, which is what
    // keeps the y^(beta-1) singularity out of the sum
    const auto full = static_cast<std::size_t>(u / step);
    double pow_prev = std::pow(step, beta);  // (1*step)^beta
    for (std::size_t k = 1; k < full; ++k) {
      const double y = static_cast<double>(k) * step;
      const double pow_next = std::pow(y + step, beta);
      acc += (wu - w.interpolate(u - y)) * (pow_prev - pow_next);
      pow_prev = pow_next;
    }
    if (static_cast<double>(full) * step < u && full >= 1) {
      const double y = static_cast<double>(full) * step;
      acc += (wu - w.interpolate(u - y)) * (std::pow(y, beta) - std::pow(u, beta));
    }
    out[j] = acc;
  }
  return out;
}

double fiiss_marginal_draw(const FiissParams& params, double u, double t_step,
                           RandomSource& src) {
  if (!(t_step > 0.0)) throw std::invalid_argument("fiiss_marginal_draw: t_step must be positive");
  const double scale = increment_scale(params.alpha, t_step);
  const double beta = params.beta;
  double d = 0.0, acc = 0.0;
  std::size_t k = 0;
  while (d < u) {
    acc += std::pow(u - d, beta);
    d += scale * sample_positive_stable(params.alpha, src);
    if (++k >= kMaxPathPoints) {
      throw resource_error("fiiss_marginal_draw: grid cap reached");
    }
  }
  return t_step * acc;
}

DivergenceScanResult divergence_scan(const FiissParams& params, double lo, double hi,
                                     std::span<const std::size_t> ladder,
                                     std::size_t n_paths, double t_step,
                                     std::uint64_t seed, std::uint64_t stream_base,
                                     int workers) {
  if (!(0.0 < lo && lo < hi)) {
    throw std::invalid_argument("divergence_scan: need 0 < lo < hi");
  }
  std::vector<std::size_t> sizes(ladder.begin(), ladder.end());
  auto per_path = replicate(
      n_paths, seed, stream_base, workers,
      [&](std::size_t, RandomSource& src) {
        const GridPath d = simulate_subordinator_until(params.alpha, hi, t_step, src);
        std::vector<double> maxima(sizes.size());
        for (std::size_t r = 0; r < sizes.size(); ++r) {
          const std::size_t n = sizes[r];
          std::vector<double> grid(n);
          for (std::size_t i = 0; i < n; ++i) {
            grid[i] = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(n - 1);
          }
          const auto y = fiiss_from_subordinator(d, params, grid);
          maxima[r] = *std::max_element(y.begin(), y.end());
        }
        return maxima;
      });

  DivergenceScanResult result;
  result.grid_sizes = std::move(sizes);
  result.per_path_max.resize(result.grid_sizes.size());
  result.median_max.resize(result.grid_sizes.size());
  for (std::size_t r = 0; r < result.grid_sizes.size(); ++r) {
    result.per_path_max[r].resize(n_paths);
    for (std::size_t p = 0; p < n_paths; ++p) result.per_path_max[r][p] = per_path[p][r];
    result.median_max[r] = median_of(result.per_path_max[r]);
  }
  return result;
}

}  // namespace fiiss
