#pragma once

#include <cstdint>

namespace fiiss {

// Seeded, stream-splittable uniform generator (xoshiro256++ state,
// splitmix64-expanded from the pair hash of seed and stream id).
//
// (seed, stream_id) fully determines the output sequence, so every draw is a
// pure function of (seed, stream_id, draw index).  Distinct stream ids give
// decorrelated sequences; parallel Monte Carlo assigns one stream per
// replica and never shares a source between workers.
class RandomSource {
 public:
  RandomSource(std::uint64_t seed, std::uint64_t stream_id) noexcept;

  std::uint64_t seed() const noexcept { return seed_; }
  std::uint64_t stream_id() const noexcept { return stream_; }

  std::uint64_t next_u64() noexcept;

  // Uniform on the open interval (0,1); endpoint values are rejected so
  // log(u) and 1/u are always finite.
  double uniform_open01() noexcept;

 private:
  std::uint64_t state_[4];
  std::uint64_t seed_;
  std::uint64_t stream_;
};

}  // namespace fiiss
