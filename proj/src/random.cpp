#include "fiiss/random.hpp"

namespace fiiss {
namespace {

// splitmix64 finalizer; also used as the pair hash for (seed, stream).
inline std::uint64_t mix64(std::uint64_t z) noexcept {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

inline std::uint64_t rotl(std::uint64_t x, int k) noexcept {
  return (x << k) | (x >> (64 - k));
}

}  // namespace

RandomSource::RandomSource(std::uint64_t seed, std::uint64_t stream_id) noexcept
    : seed_(seed), stream_(stream_id) {
  std::uint64_t x = mix64(seed + 0x9E3779B97F4A7C15ULL);
  x = mix64(x ^ (stream_id + 0xBF58476D1CE4E5B9ULL));
  for (auto& word : state_) {
    x += 0x9E3779B97F4A7C15ULL;
    word = mix64(x);
  }
  state_[0] |= 1;  // the all-zero state is the only forbidden one
}

std::uint64_t RandomSource::next_u64() noexcept {
  // xoshiro256++
  const std::uint64_t result = rotl(state_[0] + state_[3], 23) + state_[0];
  const std::uint64_t t = state_[1] << 17;
  state_[2] ^= state_[0];
  state_[3] ^= state_[1];
  state_[1] ^= state_[2];
  state_[0] ^= state_[3];
  state_[2] ^= t;
  state_[3] = rotl(state_[3], 45);
  return result;
}

double RandomSource::uniform_open01() noexcept {
  // 53-bit mantissa in [0, 1); 1.0 is unreachable, 0.0 is rejected
  double u;
  do {
    u = static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
  } while (u == 0.0);
  return u;
}

}  // namespace fiiss
