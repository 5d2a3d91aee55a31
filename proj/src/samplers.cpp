#include "fiiss/samplers.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "fiiss/special.hpp"

namespace fiiss {
namespace {

void require_alpha(double alpha, const char* who) {
  if (!(alpha > 0.0 && alpha < 1.0)) {
    throw std::domain_error(std::string(who) + ": alpha must lie in (0,1)");
  }
}

// t / ((e+t) log(e+t)) peaks near 0.318, so t^(-alpha) log(e+t) is a
// decreasing tail only for alpha above that.
constexpr double kParetoLogMinAlpha = 0.32;

}  // namespace

double sample_positive_stable(double alpha, RandomSource& src) {
  require_alpha(alpha, "sample_positive_stable");
  const double theta = M_PI * src.uniform_open01();        // (0, pi)
  const double e = -std::log(src.uniform_open01());        // unit exponential
  return std::sin(alpha * theta) *
         std::pow(std::sin((1.0 - alpha) * theta) / e, (1.0 - alpha) / alpha) /
         std::pow(std::sin(theta), 1.0 / alpha);
}

double pareto_icdf(double alpha, double u) noexcept {
  return std::pow(u, -1.0 / alpha);
}

double sample_pareto(double alpha, RandomSource& src) {
  require_alpha(alpha, "sample_pareto");
  return pareto_icdf(alpha, src.uniform_open01());
}

double sample_exponential(double rate, RandomSource& src) {
  if (!(rate > 0.0)) throw std::domain_error("sample_exponential: rate must be positive");
  return -std::log(src.uniform_open01()) / rate;
}

double sample_nu_jump(double alpha, double eps, RandomSource& src) {
  require_alpha(alpha, "sample_nu_jump");
  if (!(eps > 0.0)) throw std::domain_error("sample_nu_jump: eps must be positive");
  const double y_eps = -std::expm1(-eps / alpha);        // y(eps) in (0,1)
  const double w = std::pow(y_eps, -alpha);              // nu_tail(eps) + 1
  const double v = src.uniform_open01();
  const double y = std::pow(w - v * (w - 1.0), -1.0 / alpha);
  return -alpha * std::log1p(-y);
}

double intershot_tail(IntershotLaw law, double alpha, double t) {
  require_alpha(alpha, "intershot_tail");
  if (t <= 1.0) return 1.0;
  switch (law) {
    case IntershotLaw::Pareto:
      return std::pow(t, -alpha);
    case IntershotLaw::ParetoLog:
      if (alpha < kParetoLogMinAlpha) {
        throw std::domain_error("intershot_tail: log variant needs alpha >= 0.32");
      }
      return std::pow(t, -alpha) * std::log(M_E + t) / std::log(M_E + 1.0);
  }
  throw std::domain_error("intershot_tail: unknown law");
}

double sample_intershot(IntershotLaw law, double alpha, RandomSource& src) {
  if (law == IntershotLaw::Pareto) return sample_pareto(alpha, src);
  require_alpha(alpha, "sample_intershot");
  if (alpha < kParetoLogMinAlpha) {
    throw std::domain_error("sample_intershot: log variant needs alpha >= 0.32");
  }
  // invert the exact tail by bisection; it is strictly decreasing on [1, inf)
  const double u = src.uniform_open01();
  double lo = 1.0, hi = 2.0;
  while (intershot_tail(law, alpha, hi) > u) hi *= 2.0;
  for (int i = 0; i < 200 && hi - lo > 1e-14 * hi; ++i) {
    const double mid = 0.5 * (lo + hi);
    (intershot_tail(law, alpha, mid) > u ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

}  // namespace fiiss
