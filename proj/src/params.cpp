#include "fiiss/params.hpp"

#include <cmath>
#include <stdexcept>

namespace fiiss {

Regime FiissParams::classify(double alpha, double beta) {
  if (!(alpha > 0.0 && alpha < 1.0) || !std::isfinite(alpha)) {
    throw std::domain_error("FiissParams: alpha must lie in (0,1)");
  }
  if (!std::isfinite(beta)) {
    throw std::domain_error("FiissParams: beta must be finite");
  }
  if (beta > 0.0) return Regime::PositiveBeta;
  if (beta == 0.0) return Regime::InverseSub;
  if (beta > -alpha) return Regime::NegativeRegular;
  if (beta == -alpha) return Regime::Critical;
  return Regime::Divergent;
}

FiissParams::FiissParams(double alpha_in, double beta_in)
    : alpha(alpha_in), beta(beta_in), regime(classify(alpha_in, beta_in)) {}

const char* regime_name(Regime r) noexcept {
  switch (r) {
    case Regime::PositiveBeta: return "positive-beta";
    case Regime::InverseSub: return "inverse-subordinator";
    case Regime::NegativeRegular: return "negative-regular";
    case Regime::Critical: return "critical";
    case Regime::Divergent: return "divergent";
  }
  return "unknown";
}

}  // namespace fiiss
