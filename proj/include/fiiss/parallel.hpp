#pragma once

#include <cstdint>
#include <exception>
#include <type_traits>
#include <vector>

#include "fiiss/random.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace fiiss {

// Replica i draws from its own stream (stream_base + i), and results land at
// index i, so the output is bit-identical whatever the worker count or
// schedule.  fn has signature T(std::size_t replica_index, RandomSource&).

template <typename F>
auto replicate_serial(std::size_t n, std::uint64_t seed, std::uint64_t stream_base,
                      F&& fn) {
  using T = std::invoke_result_t<F&, std::size_t, RandomSource&>;
  std::vector<T> out(n);
  for (std::size_t i = 0; i < n; ++i) {
    RandomSource src(seed, stream_base + i);
    out[i] = fn(i, src);
  }
  return out;
}

// OpenMP-parallel version; workers <= 0 means all available threads.
// Falls back to the serial reference when built without OpenMP.
template <typename F>
auto replicate(std::size_t n, std::uint64_t seed, std::uint64_t stream_base,
               int workers, F&& fn) {
  using T = std::invoke_result_t<F&, std::size_t, RandomSource&>;
#ifdef _OPENMP
  if (workers == 1 || n < 2) return replicate_serial(n, seed, stream_base, fn);
  std::vector<T> out(n);
  std::exception_ptr error;
  const int threads = workers > 0 ? workers : omp_get_max_threads();
#pragma omp parallel for schedule(dynamic, 16) num_threads(threads)
  for (long long i = 0; i < static_cast<long long>(n); ++i) {
    try {
      RandomSource src(seed, stream_base + static_cast<std::uint64_t>(i));
      out[static_cast<std::size_t>(i)] = fn(static_cast<std::size_t>(i), src);
    } catch (...) {
#pragma omp critical
      if (!error) error = std::current_exception();
    }
  }
  if (error) std::rethrow_exception(error);
  return out;
#else
  (void)workers;
  return replicate_serial(n, seed, stream_base, fn);
#endif
}

}  // namespace fiiss
