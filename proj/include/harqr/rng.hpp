#pragma once

#include <cmath>
#include <cstdint>

namespace harqr {

namespace detail {

// SplitMix64 finalizer. Bijective on u64.
inline constexpr std::uint64_t mix64(std::uint64_t x) {
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

inline constexpr std::uint64_t kGolden = 0x9e3779b97f4a7c15ULL;

inline constexpr std::uint64_t rotl(std::uint64_t x, int k) {
  return (x << k) | (x >> (64 - k));
}

}  // namespace detail

// Seeded, splittable random stream (xoshiro256++ core, SplitMix64-expanded
// state). The full draw sequence is a pure function of (seed, stream_index):
// the same pair reproduces the same bits on any platform, and distinct
// stream indices give statistically independent streams. A single stream
// must not be shared across threads; hand each worker its own substream.
class RngStream {
 public:
  RngStream() : RngStream(0, 0) {}

  RngStream(std::uint64_t seed, std::uint64_t stream_index)
      : seed_(seed), stream_index_(stream_index) {
    std::uint64_t sm = detail::mix64(seed + detail::kGolden * (stream_index + 1));
    for (auto& word : state_) {
      sm += detail::kGolden;
      word = detail::mix64(sm);
    }
    if ((state_[0] | state_[1] | state_[2] | state_[3]) == 0) state_[0] = 1;
  }

  std::uint64_t seed() const { return seed_; }
  std::uint64_t stream_index() const { return stream_index_; }

  // Derives a child stream keyed by `child`. Children of distinct parents
  // or distinct keys land on distinct stream indices (up to the negligible
  // collision rate of the 64-bit mix).
  RngStream substream(std::uint64_t child) const {
    return RngStream(seed_,
                     detail::mix64(stream_index_ + detail::kGolden * (child + 1)));
  }

  std::uint64_t next_u64() {
    const std::uint64_t result =
        detail::rotl(state_[0] + state_[3], 23) + state_[0];
    const std::uint64_t t = state_[1] << 17;
    state_[2] ^= state_[0];
    state_[3] ^= state_[1];
    state_[1] ^= state_[2];
    state_[0] ^= state_[3];
    state_[2] ^= t;
    state_[3] = detail::rotl(state_[3], 45);
    return result;
  }

  // Uniform on [0, 1) with 53 random bits.
  double next_unit() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  // Uniform on (0, 1]; safe as a log() argument.
  double next_unit_positive() {
    return static_cast<double>((next_u64() >> 11) + 1) * 0x1.0p-53;
  }

  // Exponential variate with the given mean.
  double next_exponential(double mean) { return -mean * std::log(next_unit_positive()); }

 private:
  std::uint64_t seed_;
  std::uint64_t stream_index_;
  std::uint64_t state_[4];
};

}  // namespace harqr
