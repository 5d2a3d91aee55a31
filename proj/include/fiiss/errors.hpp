#pragma once

#include <stdexcept>
#include <string>

namespace fiiss {

// A simulation would exceed a configured size cap (maps to exit code 3).
class resource_error : public std::runtime_error {
 public:
  explicit resource_error(const std::string& what) : std::runtime_error(what) {}
};

// A fit window cannot be resolved by the sample (tail too thin).
class window_error : public std::invalid_argument {
 public:
  explicit window_error(const std::string& what) : std::invalid_argument(what) {}
};

}  // namespace fiiss
