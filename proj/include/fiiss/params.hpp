#pragma once

namespace fiiss {

// Where beta sits relative to 0 and -alpha decides the qualitative behaviour
// of the fractionally integrated path: monotone, continuous, or unbounded on
// every interval.
enum class Regime {
  PositiveBeta,     // beta > 0: nondecreasing, smooths the inverse subordinator
  InverseSub,       // beta = 0: Y coincides with the inverse subordinator
  NegativeRegular,  // -alpha < beta < 0: continuous but non-monotone
  Critical,         // beta = -alpha
  Divergent,        // beta < -alpha: sup over any interval is infinite
};

struct FiissParams {
  double alpha;  // stability index, in (0,1)
  double beta;   // fractional integration order, any real
  Regime regime;

  FiissParams(double alpha, double beta);

  // Self-similarity index of Y.
  double index() const noexcept { return alpha + beta; }

  // True in the regimes with a.s. continuous paths (beta > -alpha).
  bool continuous_regime() const noexcept { return beta > -alpha; }

  // Pure function of (alpha, beta); throws std::domain_error unless
  // 0 < alpha < 1. Exhaustive and mutually exclusive over beta.
  static Regime classify(double alpha, double beta);
};

const char* regime_name(Regime r) noexcept;

}  // namespace fiiss
