#include "fiiss/shotnoise.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "fiiss/parallel.hpp"

namespace fiiss {
namespace {

constexpr std::size_t kMaxRenewals = 100'000'000;

double quantile_of(std::vector<double> v, double q) {
  std::sort(v.begin(), v.end());
  const double pos = q * static_cast<double>(v.size() - 1);
  const auto i = static_cast<std::size_t>(pos);
  if (i + 1 >= v.size()) return v.back();
  const double frac = pos - static_cast<double>(i);
  return v[i] + frac * (v[i + 1] - v[i]);
}

}  // namespace

RenewalSequence simulate_renewal(double alpha, double horizon, RandomSource& src,
                                 IntershotLaw law) {
  if (!(horizon > 0.0)) throw std::invalid_argument("simulate_renewal: horizon must be positive");
  RenewalSequence seq;
  seq.horizon = horizon;
  seq.times.push_back(0.0);
  double s = 0.0;
  while (s <= horizon) {
    s += sample_intershot(law, alpha, src);
    seq.times.push_back(s);
    if (seq.times.size() >= kMaxRenewals) {
      throw resource_error("simulate_renewal: renewal count cap reached");
    }
  }
  return seq;
}

std::size_t first_passage(const RenewalSequence& seq, double t) {
  if (t > seq.horizon) {
    throw std::out_of_range("first_passage: t beyond simulated horizon");
  }
  const auto it = std::upper_bound(seq.times.begin(), seq.times.end(), t);
  return static_cast<std::size_t>(it - seq.times.begin());
}

ResponseFunction ResponseFunction::for_beta(double beta) noexcept {
  return ResponseFunction{beta, beta >= 0.0 ? Form::PowerLaw : Form::ShiftedPowerLaw};
}

double ResponseFunction::operator()(double t) const noexcept {
  return form == Form::PowerLaw ? std::pow(t, beta) : std::pow(1.0 + t, beta);
}

double shot_noise(const RenewalSequence& seq, const ResponseFunction& h, double t) {
  return shot_noise_with(seq, h, t);
}

EmpiricalSample scaled_marginal(double alpha, double beta, double u, double t,
                                std::size_t n, std::uint64_t seed,
                                std::uint64_t stream_base, int workers,
                                IntershotLaw law) {
  if (!(u > 0.0) || !(t > 0.0)) {
    throw std::invalid_argument("scaled_marginal: u and t must be positive");
  }
  const double horizon = u * t;
  const ResponseFunction h = ResponseFunction::for_beta(beta);
  const double norm = intershot_tail(law, alpha, t) / h(t);
  auto draws = replicate(n, seed, stream_base, workers,
                         [&](std::size_t, RandomSource& src) {
                           const RenewalSequence seq = simulate_renewal(alpha, horizon, src, law);
                           return norm * shot_noise(seq, h, horizon);
                         });
  return EmpiricalSample::from_draws(
      std::move(draws),
      {{"alpha", alpha}, {"beta", beta}, {"u", u}, {"t", t},
       {"n", static_cast<double>(n)}, {"seed", static_cast<double>(seed)}});
}

EmpiricalSample undershoot_sample(double alpha, double t, std::size_t n,
                                  std::uint64_t seed, std::uint64_t stream_base,
                                  int workers) {
  if (!(t >= 1.0)) throw std::invalid_argument("undershoot_sample: t must be >= 1");
  auto draws = replicate(n, seed, stream_base, workers,
                         [&](std::size_t, RandomSource& src) {
                           const RenewalSequence seq = simulate_renewal(alpha, t, src);
                           const std::size_t k = first_passage(seq, t);
                           return (t - seq.times[k - 1]) / t;
                         });
  return EmpiricalSample::from_draws(
      std::move(draws),
      {{"alpha", alpha}, {"t", t},
       {"n", static_cast<double>(n)}, {"seed", static_cast<double>(seed)}});
}

double dyadic_increment_sup(const RenewalSequence& seq, double norm, double t, double T,
                            double exponent) {
  if (!(t > 1.0) || !(T > 0.0)) {
    throw std::invalid_argument("dyadic_increment_sup: need t > 1, T > 0");
  }
  const int levels = static_cast<int>(std::ceil(std::log2(t * T)));
  double sup = 0.0;
  for (int j = 1; j <= levels; ++j) {
    const double h = T * std::pow(2.0, -j);      // window scale at level j
    const double denom = std::pow(h, exponent);
    const std::size_t windows = std::size_t{1} << (j - 1);
    for (std::size_t k = 1; k <= windows; ++k) {
      const double u = static_cast<double>(k) * 2.0 * h;
      const double v = (static_cast<double>(k) - 2.0) * 2.0 * h;
      const auto hi = first_passage(seq, u * t);
      const auto lo = v < 0.0 ? std::size_t{0} : first_passage(seq, v * t);
      const double value = norm * static_cast<double>(hi - lo) / denom;
      sup = std::max(sup, value);
    }
  }
  return sup;
}

ModulusDiagnostic modulus_diagnostic(double alpha, double T,
                                     std::span<const double> t_ladder, double delta,
                                     std::size_t n, std::uint64_t seed,
                                     std::uint64_t stream_base, int workers) {
  if (!(delta > 0.0 && delta < alpha)) {
    throw std::invalid_argument("modulus_diagnostic: need 0 < delta < alpha");
  }
  ModulusDiagnostic diag;
  std::uint64_t base = stream_base;
  for (double t : t_ladder) {
    const double norm = intershot_tail(IntershotLaw::Pareto, alpha, t);
    auto sups = replicate(n, seed, base, workers,
                          [&](std::size_t, RandomSource& src) {
                            const RenewalSequence seq = simulate_renewal(alpha, T * t, src);
                            return dyadic_increment_sup(seq, norm, t, T, alpha - delta);
                          });
    diag.t_ladder.push_back(t);
    diag.q50.push_back(quantile_of(sups, 0.50));
    diag.q90.push_back(quantile_of(sups, 0.90));
    diag.q99.push_back(quantile_of(sups, 0.99));
    base += n;
  }
  return diag;
}

double exp_moment_nu(double alpha, double t, double lambda, std::size_t n,
                     std::uint64_t seed, std::uint64_t stream_base, int workers) {
  const double a_t = intershot_tail(IntershotLaw::Pareto, alpha, t);
  auto draws = replicate(n, seed, stream_base, workers,
                         [&](std::size_t, RandomSource& src) {
                           const RenewalSequence seq = simulate_renewal(alpha, t, src);
                           const auto count = first_passage(seq, t);
                           return std::exp(lambda * a_t * static_cast<double>(count));
                         });
  double mean = 0.0;
  for (double d : draws) mean += d;
  return mean / static_cast<double>(n);
}

}  // namespace fiiss
