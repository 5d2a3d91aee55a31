#pragma once

#include "fiiss/params.hpp"

namespace fiiss {

// Euler gamma function on (0, 170], Lanczos approximation (g = 7, 9 terms).
// Relative error is below 1e-12 on (0, 30]; arguments outside (0, 170]
// throw std::domain_error (170 keeps the result inside double range).
double gamma_fn(double x);

// n-th moment of the Mittag-Leffler law with parameter alpha:
//   n! / (Gamma(1-alpha)^n * Gamma(1+n*alpha)),  n >= 1.
double mittag_leffler_moment(double alpha, int n);

// Laplace exponent of the killed subordinator attached to alpha:
//   Phi_alpha(s) = Gamma(1-alpha) Gamma(1+alpha*s) / Gamma(1+alpha*(s-1)),
// s >= 0.  Phi_alpha(0) = 1 is the unit killing rate.
double laplace_exponent_phi(double alpha, double s);

// Laplace exponent of c*Z_alpha with c = (alpha+beta)/alpha:
//   Psi(s) = Gamma(1-alpha) Gamma((alpha+beta)s+1) / Gamma((alpha+beta)s+1-alpha).
// Requires beta > -alpha.  Psi(s) ~ Gamma(1-alpha) (alpha+beta)^alpha s^alpha
// for large s.
double psi_exponent(const FiissParams& params, double s);

// Iterated-logarithm constant
//   c_{alpha,beta} = 1 / (Gamma(1-alpha) (alpha+beta)^alpha (1-alpha)^(1-alpha)),
// defined for beta > -alpha.  At beta = 0 this is the classical constant for
// the inverse stable subordinator.
double lil_constant(const FiissParams& params);

// Leading tail exponent of Y(1):  -log P{Y(1) > x} ~ (x / c_{alpha,beta})^(1/(1-alpha)).
double tail_asymptote(const FiissParams& params, double x);

// Levy density of the killed subordinator Z_alpha:
//   nu_alpha(x) = exp(-x/alpha) / (1 - exp(-x/alpha))^(alpha+1),  x > 0.
double levy_density_nu(double alpha, double x);

// Tail mass nu_alpha((eps, infinity)) = (1 - exp(-eps/alpha))^(-alpha) - 1,
// closed form via the substitution y = 1 - exp(-x/alpha).
double nu_tail(double alpha, double eps);

// Mean of the jumps below eps per unit time, int_0^eps x nu_alpha(dx),
// evaluated by the exact series alpha^2 sum_k y^(k-alpha) / (k (k-alpha)) in
// y = 1 - exp(-eps/alpha).  This is the drift that compensates truncating
// the small jumps of Z_alpha.
double nu_small_jump_mean(double alpha, double eps);

}  // namespace fiiss
