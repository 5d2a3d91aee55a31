#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "fiiss/errors.hpp"
#include "fiiss/grid_path.hpp"
#include "fiiss/params.hpp"
#include "fiiss/random.hpp"

namespace fiiss {

// Hard cap on grid points per simulated path.
inline constexpr std::size_t kMaxPathPoints = 100'000'000;

// Stable subordinator on the grid t_i = i*step, i = 0..ceil(horizon/step):
// values[i] = values[i-1] + (Gamma(1-alpha)*step)^(1/alpha) * S_i with S_i
// i.i.d. standard positive stable, so each increment has Laplace transform
// exp(-Gamma(1-alpha)*step*s^alpha).
GridPath simulate_subordinator(double alpha, double horizon, double step, RandomSource& src);

// Same increments, but the horizon grows until the path exceeds target.
GridPath simulate_subordinator_until(double alpha, double target, double step, RandomSource& src);

// step * min{i : D_i > u} without materializing the path; 0 for u < 0.
// The right-continuous inversion overestimates by less than one step.
double inverse_passage_time(double alpha, double u, double step, RandomSource& src);

// Scalar inversion of a stored path: step * min{i : d.values[i] > u}.
// Throws std::out_of_range when u is at or beyond the path's reach.
double invert_at(const GridPath& d, double u);

// Inversion on a whole grid of u values (two-pointer walk).
GridPath invert_path(const GridPath& d, const UniformGrid& u_grid);

// Inverse subordinator on {0, u_step, ..., >= u_max}: simulates D adaptively
// past u_max and inverts.
GridPath simulate_inverse_subordinator(double alpha, double u_max, double u_step,
                                       double t_step, RandomSource& src);

// Time-integral form of the fractionally integrated path, evaluated from the
// subordinator directly:
//   Y(u) ~= d.step * sum_i (u - d.values[i])^beta over d.values[i] < u (strict).
// The strict inequality excludes the singular node, so every value is finite.
std::vector<double> fiiss_from_subordinator(const GridPath& d, const FiissParams& params,
                                            std::span<const double> u_grid);

// Riemann-Liouville form for beta > 0:  Y(u) = beta * int_0^u (u-y)^(beta-1) W(y) dy,
// computed cell by cell with W piecewise linear and the kernel integrated
// exactly (the integrand is singular at y = u for beta < 1, so plain node
// quadrature does not apply).
std::vector<double> fiiss_riemann_liouville(const GridPath& w, double beta,
                                            std::span<const double> u_grid);

// Marchaud form for -alpha < beta < 0:
//   Y(u) = u^beta W(u) + |beta| * int_0^u (W(u) - W(u-y)) y^(beta-1) dy
// with y^(beta-1) integrated exactly per cell against a piecewise-constant
// increment (left endpoint, so the cell at 0 contributes nothing).
std::vector<double> fiiss_marchaud(const GridPath& w, const FiissParams& params,
                                   std::span<const double> u_grid);

// One Monte Carlo draw of Y(u) through a fresh subordinator path, without
// storing the path.
double fiiss_marginal_draw(const FiissParams& params, double u, double t_step,
                           RandomSource& src);

struct DivergenceScanResult {
  std::vector<std::size_t> grid_sizes;            // refinement ladder
  std::vector<double> median_max;                 // per refinement, median over paths
  std::vector<std::vector<double>> per_path_max;  // [refinement][path]
};

// For each grid resolution N in the ladder, the maximum of Y over the N-point
// grid on [lo, hi], per path; medians across paths.  In the regimes with
// beta <= -alpha the medians grow without bound along the ladder; for
// beta > -alpha they stabilize.
DivergenceScanResult divergence_scan(const FiissParams& params, double lo, double hi,
                                     std::span<const std::size_t> ladder,
                                     std::size_t n_paths, double t_step,
                                     std::uint64_t seed, std::uint64_t stream_base,
                                     int workers);

}  // namespace fiiss
