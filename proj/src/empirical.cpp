#include "fiiss/empirical.hpp"

#include <algorithm>
#include <stdexcept>

namespace fiiss {

EmpiricalSample EmpiricalSample::from_draws(std::vector<double> draws,
                                            std::map<std::string, double> meta) {
  if (draws.empty()) throw std::invalid_argument("EmpiricalSample: empty sample");
  std::sort(draws.begin(), draws.end());
  return EmpiricalSample{std::move(draws), std::move(meta)};
}

std::size_t EmpiricalSample::count_above(double x) const noexcept {
  return static_cast<std::size_t>(values.end() -
                                  std::upper_bound(values.begin(), values.end(), x));
}

}  // namespace fiiss
