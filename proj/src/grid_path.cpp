#include "fiiss/grid_path.hpp"

#include <cmath>
#include <stdexcept>

namespace fiiss {

std::vector<double> UniformGrid::points() const {
  std::vector<double> out(n);
  for (std::size_t i = 0; i < n; ++i) out[i] = point(i);
  return out;
}

UniformGrid UniformGrid::covering(double hi, double step) {
  if (!(step > 0.0) || !(hi > 0.0)) {
    throw std::invalid_argument("UniformGrid::covering: hi and step must be positive");
  }
  const auto n = static_cast<std::size_t>(std::ceil(hi / step)) + 1;
  return UniformGrid{0.0, step, n};
}

double GridPath::interpolate(double x) const {
  if (values.empty()) throw std::logic_error("GridPath::interpolate: empty path");
  const double pos = (x - origin) / step;
  if (pos <= 0.0) return values.front();
  const auto last = static_cast<double>(values.size() - 1);
  if (pos >= last) return values.back();
  const auto i = static_cast<std::size_t>(pos);
  const double frac = pos - static_cast<double>(i);
  return values[i] + frac * (values[i + 1] - values[i]);
}

}  // namespace fiiss
