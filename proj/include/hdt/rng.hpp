#pragma once

#include <cmath>
#include <cstdint>
#include <limits>
#include <string_view>

namespace hdt {

/// Identifier written into every metadata sidecar. Bump the suffix whenever
/// the bit stream produced for a given seed changes.
inline constexpr std::string_view kGeneratorId = "xoshiro256starstar+splitmix64/v1";

inline std::uint64_t splitmix64(std::uint64_t& state) noexcept {
  std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

/// Named sub-streams. Each consumer of randomness draws from its own stream so
/// that, e.g., harness clocks do not shift when the sampler changes.
enum class Stream : std::uint64_t {
  sampling = 1,
  duplicate_fix = 2,
  harness_clocks = 3,
  walks = 4,
  backward_walks = 5,
  environment = 6,
  perturbation = 7,
};

/// Mixes (seed, stream, index) into an independent 64-bit seed.
inline std::uint64_t derive_seed(std::uint64_t seed, Stream stream, std::uint64_t index = 0) noexcept {
  std::uint64_t s = seed ^ (0x6a09e667f3bcc909ULL * (static_cast<std::uint64_t>(stream) + 1));
  std::uint64_t a = splitmix64(s);
  s ^= index * 0xd1b54a32d192ed03ULL;
  return a ^ splitmix64(s);
}

/// xoshiro256** seeded through splitmix64. Satisfies UniformRandomBitGenerator,
/// but the helper draws below are used instead of <random> distributions so
/// that streams are bit-identical across standard libraries.
class Rng {
 public:
  using result_type = std::uint64_t;

  explicit Rng(std::uint64_t seed) noexcept {
    std::uint64_t s = seed;
    for (auto& w : state_) w = splitmix64(s);
  }
  Rng(std::uint64_t seed, Stream stream, std::uint64_t index = 0) noexcept
      : Rng(derive_seed(seed, stream, index)) {}

  static constexpr result_type min() noexcept { return 0; }
  static constexpr result_type max() noexcept { return std::numeric_limits<result_type>::max(); }

  result_type operator()() noexcept {
    const std::uint64_t result = rotl(state_[1] * 5, 7) * 9;
    const std::uint64_t t = state_[1] << 17;
    state_[2] ^= state_[0];
    state_[3] ^= state_[1];
    state_[1] ^= state_[2];
    state_[0] ^= state_[3];
    state_[2] ^= t;
    state_[3] = rotl(state_[3], 45);
    return result;
  }

  /// Uniform on [0, 1) with 53 random bits.
  double uniform() noexcept { return static_cast<double>((*this)() >> 11) * 0x1.0p-53; }

  /// Exponential with the given rate (> 0).
  double exponential(double rate = 1.0) noexcept { return -std::log1p(-uniform()) / rate; }

  /// Uniform integer in [0, n), n > 0, by rejection.
  std::uint64_t below(std::uint64_t n) noexcept {
    const std::uint64_t limit = max() - max() % n;
    std::uint64_t x;
    do {
      x = (*this)();
    } while (x >= limit);
    return x % n;
  }

 private:
  static constexpr std::uint64_t rotl(std::uint64_t x, int k) noexcept { return (x << k) | (x >> (64 - k)); }
  std::uint64_t state_[4];
};

}  // namespace hdt
