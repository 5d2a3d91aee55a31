#pragma once

#include <cstdint>
#include <vector>

namespace fiiss {

// Uniform grid specification: points origin + i*step, i = 0..n-1.
struct UniformGrid {
  double origin = 0.0;
  double step = 0.0;
  std::size_t n = 0;

  double point(std::size_t i) const noexcept { return origin + step * static_cast<double>(i); }
  std::vector<double> points() const;

  // Grid {0, step, ..., >= hi} covering [0, hi].
  static UniformGrid covering(double hi, double step);
};

// Sample path of a process on a uniform grid of its indexing variable.
// Subordinator paths are strictly increasing with values[0] = 0; inverse
// subordinator paths are nondecreasing and nonnegative.
struct GridPath {
  double origin = 0.0;
  double step = 0.0;
  std::vector<double> values;

  std::size_t size() const noexcept { return values.size(); }
  double point(std::size_t i) const noexcept { return origin + step * static_cast<double>(i); }

  // Piecewise-linear evaluation between grid nodes; clamps to the ends.
  double interpolate(double x) const;
};

}  // namespace fiiss
