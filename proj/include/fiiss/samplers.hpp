#pragma once

#include "fiiss/random.hpp"

namespace fiiss {

// One draw of the standard positive alpha-stable law, E exp(-s S) = exp(-s^alpha),
// via Kanter's representation (uniform angle on (0,pi) plus a unit exponential).
// Exact and rejection-free for every alpha in (0,1).
double sample_positive_stable(double alpha, RandomSource& src);

// Pareto quantile function: P{xi > t} = t^(-alpha) for t >= 1.
double pareto_icdf(double alpha, double u) noexcept;

double sample_pareto(double alpha, RandomSource& src);

double sample_exponential(double rate, RandomSource& src);

// Draw from the Levy measure nu_alpha restricted to (eps, infinity) and
// normalized, by exact inverse CDF in the substituted variable
// y = 1 - exp(-x/alpha) (density proportional to y^(-alpha-1) on (y(eps), 1)).
double sample_nu_jump(double alpha, double eps, RandomSource& src);

// Inter-shot laws for the renewal simulations.  Pareto has the exact tail
// t^(-alpha); ParetoLog multiplies in the slowly varying factor log(e+t),
// normalized so the tail equals 1 at t = 1.  The log variant is a valid
// (monotone) survival function only for alpha >= 0.32.
enum class IntershotLaw { Pareto, ParetoLog };

// Exact P{xi > t} for the selected law (1 for t <= 1).
double intershot_tail(IntershotLaw law, double alpha, double t);

double sample_intershot(IntershotLaw law, double alpha, RandomSource& src);

}  // namespace fiiss
