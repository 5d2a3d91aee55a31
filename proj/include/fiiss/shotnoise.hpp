#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "fiiss/empirical.hpp"
#include "fiiss/errors.hpp"
#include "fiiss/random.hpp"
#include "fiiss/samplers.hpp"

namespace fiiss {

// Zero-delayed renewal sequence S_0 = 0 < S_1 < S_2 < ..., extended one
// point past the horizon.
struct RenewalSequence {
  std::vector<double> times;
  double horizon = 0.0;
};

RenewalSequence simulate_renewal(double alpha, double horizon, RandomSource& src,
                                 IntershotLaw law = IntershotLaw::Pareto);

// First-passage count nu(t) = min{k : S_k > t} = #{k : S_k <= t}; 0 for t < 0.
// Throws std::out_of_range for t beyond the simulated horizon.
std::size_t first_passage(const RenewalSequence& seq, double t);

// Regularly varying response function: t^beta for beta >= 0, (1+t)^beta for
// beta < 0 (finite at 0, monotone, and h(t)/t^beta -> 1).
struct ResponseFunction {
  enum class Form { PowerLaw, ShiftedPowerLaw };

  double beta = 0.0;
  Form form = Form::PowerLaw;

  static ResponseFunction for_beta(double beta) noexcept;

  double operator()(double t) const noexcept;
};

// X(t) = sum_k h(t - S_k) 1{S_k <= t}; 0 for t < 0.
double shot_noise(const RenewalSequence& seq, const ResponseFunction& h, double t);

// Same sum against an arbitrary response callable (used by the
// eventually-monotone variants in the test suites).
template <typename H>
double shot_noise_with(const RenewalSequence& seq, H&& h, double t) {
  if (t > seq.horizon) throw std::out_of_range("shot_noise: t beyond simulated horizon");
  double x = 0.0;
  for (double s : seq.times) {
    if (s > t) break;
    x += h(t - s);
  }
  return x;
}

// n i.i.d. draws of (P{xi > t} / h(t)) * X(u*t), the normalized shot-noise
// marginal whose large-t limit is the fractionally integrated path at u.
EmpiricalSample scaled_marginal(double alpha, double beta, double u, double t,
                                std::size_t n, std::uint64_t seed,
                                std::uint64_t stream_base, int workers,
                                IntershotLaw law = IntershotLaw::Pareto);

// n draws of the normalized undershoot (t - S_{nu(t)-1}) / t in [0,1]; the
// large-t law is Beta(1-alpha, alpha) (Dynkin-Lamperti).
EmpiricalSample undershoot_sample(double alpha, double t, std::size_t n,
                                  std::uint64_t seed, std::uint64_t stream_base,
                                  int workers);

// Single-path sup of a(t)(nu(u t) - nu(v t)) / (u - v)^exponent over the
// dyadic decomposition of {0 <= v < u <= T, u - v >= 1/t}: scales
// h_j = T*2^-j down to ~1/t, windows (k-2, k] * T * 2^(-j+1).
double dyadic_increment_sup(const RenewalSequence& seq, double norm, double t, double T,
                            double exponent);

struct ModulusDiagnostic {
  std::vector<double> t_ladder;
  std::vector<double> q50, q90, q99;  // per-t empirical quantiles of the sup
};

// Tightness diagnostic for the renewal modulus of continuity: the upper
// quantiles of the dyadic sup should not grow along the t ladder.
ModulusDiagnostic modulus_diagnostic(double alpha, double T,
                                     std::span<const double> t_ladder, double delta,
                                     std::size_t n, std::uint64_t seed,
                                     std::uint64_t stream_base, int workers);

// Empirical mean of exp(lambda * a(t) * nu(t)); bounded in t for every
// lambda, which is what keeps the modulus statistic tight.
double exp_moment_nu(double alpha, double t, double lambda, std::size_t n,
                     std::uint64_t seed, std::uint64_t stream_base, int workers);

}  // namespace fiiss
