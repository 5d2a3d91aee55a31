#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace fiiss {

// Sorted collection of i.i.d. scalar draws plus the parameters that
// generated them.
struct EmpiricalSample {
  std::vector<double> values;             // nondecreasing, never empty
  std::map<std::string, double> meta;     // generating parameters

  static EmpiricalSample from_draws(std::vector<double> draws,
                                    std::map<std::string, double> meta = {});

  std::size_t n() const noexcept { return values.size(); }

  // Number of sample points strictly above x.
  std::size_t count_above(double x) const noexcept;
};

}  // namespace fiiss
