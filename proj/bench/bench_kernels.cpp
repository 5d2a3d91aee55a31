// Wall-clock comparison of the OpenMP replication driver against the serial
// reference on the two hottest kernels.  Build target only, not a test.

#include <cstdio>
#include <chrono>
#include <cstdint>
#include <numeric>
#include <vector>

#include "fiiss/lamperti.hpp"
#include "fiiss/parallel.hpp"
#include "fiiss/paths.hpp"

using namespace fiiss;

namespace {

template <typename F>
double time_run(F&& fn) {
  const auto start = std::chrono::steady_clock::now();
  fn();
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

template <typename Draw>
void compare(const char* name, std::size_t n, Draw&& draw) {
  double checksum_serial = 0.0, checksum_parallel = 0.0;
  const double serial = time_run([&] {
    auto out = replicate_serial(n, 1, 0, draw);
    checksum_serial = std::accumulate(out.begin(), out.end(), 0.0);
  });
  const double parallel = time_run([&] {
    auto out = replicate(n, 1, 0, 0, draw);
    checksum_parallel = std::accumulate(out.begin(), out.end(), 0.0);
  });
  std::printf("%-28s n=%-8zu serial %7.3f s   parallel %7.3f s   speedup %4.2fx   %s\n",
              name, n, serial, parallel, serial / parallel,
              checksum_serial == checksum_parallel ? "bit-identical" : "MISMATCH");
}

}  // namespace

int main() {
  compare("mittag_leffler draw", 200000, [](std::size_t, RandomSource& src) {
    return inverse_passage_time(0.75, 1.0, 1e-3, src);
  });
  compare("fiiss marginal draw", 100000, [](std::size_t, RandomSource& src) {
    return fiiss_marginal_draw(FiissParams(0.75, -0.5), 1.0, 1e-3, src);
  });
  compare("exponential functional", 100000, [](std::size_t, RandomSource& src) {
    return simulate_exp_functional(0.75, 5.0 / 3.0, 1e-4, src);
  });
  return 0;
}
