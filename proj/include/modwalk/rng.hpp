#pragma once

// Pinned random number generation for the simulator.
//
// Algorithm "modwalk-rng-v1": every sample path owns a SplitMix64 stream
// whose initial state is mix64(seed ^ kStreamSalt) + mix64(index), where
// mix64 is the SplitMix64 output finalizer. Uniform doubles take the top 53
// bits of one output. The definition uses only 64-bit unsigned arithmetic,
// so streams are identical on every platform. Changing any detail here must
// bump the version string.

#include <cstdint>
#include <limits>

namespace modwalk {

  inline constexpr char const* kRngVersion = "modwalk-rng-v1";

  constexpr std::uint64_t mix64(std::uint64_t z) noexcept {
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  class SplitMix64 {
   public:
    using result_type = std::uint64_t;

    explicit constexpr SplitMix64(std::uint64_t state) noexcept
        : _state(state) {}

    // Stream `index` of the family keyed by `seed`.
    static constexpr SplitMix64 stream(std::uint64_t seed,
                                       std::uint64_t index) noexcept {
      return SplitMix64(mix64(seed ^ kStreamSalt) + mix64(index));
    }

    constexpr std::uint64_t operator()() noexcept {
      _state += 0x9e3779b97f4a7c15ULL;
      return mix64(_state);
    }

    // Uniform on [0, 1) with 53 random bits.
    constexpr double uniform01() noexcept {
      return static_cast<double>((*this)() >> 11) * 0x1.0p-53;
    }

    // Uniform on {0, ..., n - 1}, n >= 1, by rejection.
    constexpr std::uint64_t below(std::uint64_t n) noexcept {
      std::uint64_t const limit = std::numeric_limits<std::uint64_t>::max()
                                  - std::numeric_limits<std::uint64_t>::max() % n;
      std::uint64_t r;
      do {
        r = (*this)();
      } while (r >= limit);
      return r % n;
    }

    static constexpr std::uint64_t min() noexcept {
      return 0;
    }
    static constexpr std::uint64_t max() noexcept {
      return std::numeric_limits<std::uint64_t>::max();
    }

   private:
    static constexpr std::uint64_t kStreamSalt = 0x6d6f6477616c6b31ULL;
    std::uint64_t _state;
  };

}  // namespace modwalk
