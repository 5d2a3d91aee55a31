#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <stdexcept>
#include <vector>

#include "fiiss/parallel.hpp"
#include "fiiss/samplers.hpp"

using namespace fiiss;

TEST_CASE("parallel replication is bit-identical to the serial reference") {
  const auto draw = [](std::size_t, RandomSource& src) {
    double acc = 0.0;
    for (int i = 0; i < 50; ++i) acc += sample_positive_stable(0.7, src);
    return acc;
  };
  const auto serial = replicate_serial(5000, 31337, 100, draw);
  for (int workers : {0, 1, 2, 3}) {
    const auto parallel = replicate(5000, 31337, 100, workers, draw);
    REQUIRE(parallel.size() == serial.size());
    for (std::size_t i = 0; i < serial.size(); ++i) CHECK(parallel[i] == serial[i]);
  }
}

TEST_CASE("replicas with vector results keep their slots") {
  const auto draw = [](std::size_t i, RandomSource& src) {
    return std::vector<double>{static_cast<double>(i), src.uniform_open01()};
  };
  const auto serial = replicate_serial(257, 9, 0, draw);
  const auto parallel = replicate(257, 9, 0, 0, draw);
  for (std::size_t i = 0; i < serial.size(); ++i) {
    CHECK(parallel[i][0] == static_cast<double>(i));
    CHECK(parallel[i] == serial[i]);
  }
}

TEST_CASE("worker exceptions surface to the caller") {
  const auto draw = [](std::size_t i, RandomSource&) -> double {
    if (i == 421) throw std::runtime_error("boom");
    return 0.0;
  };
  CHECK_THROWS_AS(replicate(1000, 1, 0, 0, draw), std::runtime_error);
}

TEST_CASE("distinct streams decorrelate replicas") {
  const auto draws = replicate(2000, 5, 0, 0, [](std::size_t, RandomSource& src) {
    return src.uniform_open01();
  });
  // crude independence check: adjacent-pair correlation near zero
  double mean = 0.0;
  for (double x : draws) mean += x;
  mean /= static_cast<double>(draws.size());
  double num = 0.0, den = 0.0;
  for (std::size_t i = 0; i + 1 < draws.size(); ++i) {
    num += (draws[i] - mean) * (draws[i + 1] - mean);
    den += (draws[i] - mean) * (draws[i] - mean);
  }
  CHECK(std::abs(num / den) < 0.08);
}
