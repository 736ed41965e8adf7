#pragma once

#include <cstdint>
#include <initializer_list>
#include <limits>

namespace logwalk {

/// SplitMix64 output function (Steele, Lea, Flood).
constexpr std::uint64_t mix64(std::uint64_t z) noexcept {
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

/// Sequential generator for one Monte-Carlo trial. Satisfies
/// UniformRandomBitGenerator; the sequence depends only on the initial
/// state, so results are identical across platforms.
class TrialRng {
 public:
  using result_type = std::uint64_t;

  constexpr explicit TrialRng(std::uint64_t state) noexcept : state_(state) {}

  static constexpr result_type min() noexcept { return 0; }
  static constexpr result_type max() noexcept { return std::numeric_limits<result_type>::max(); }

  constexpr result_type operator()() noexcept {
    state_ += 0x9e3779b97f4a7c15ULL;
    return mix64(state_);
  }

  /// Uniform double in [0, 1) with 53 random bits.
  constexpr double uniform() noexcept {
    return static_cast<double>((*this)() >> 11) * 0x1.0p-53;
  }

  /// Uniform integer in [0, bound); bound must be positive.
  constexpr std::uint64_t below(std::uint64_t bound) noexcept {
    // Rejection on the top of the range keeps the draw exactly uniform.
    const std::uint64_t limit = max() - max() % bound;
    std::uint64_t x = (*this)();
    while (x >= limit) x = (*this)();
    return x % bound;
  }

  constexpr std::uint64_t state() const noexcept { return state_; }

 private:
  std::uint64_t state_;
};

/// Counter-based randomness keyed by (seed, stream). Each trial index gets
/// its own TrialRng, so trial batches can be split across workers in any
/// order without changing any individual draw.
class RandomSource {
 public:
  constexpr explicit RandomSource(std::uint64_t seed, std::uint64_t stream = 0) noexcept
      : seed_(seed), stream_(stream) {}

  constexpr std::uint64_t seed() const noexcept { return seed_; }
  constexpr std::uint64_t stream() const noexcept { return stream_; }

  /// Source for a sub-computation identified by a tuple of labels.
  constexpr RandomSource child(std::initializer_list<std::uint64_t> labels) const noexcept {
    std::uint64_t h = mix64(stream_ ^ 0x6a09e667f3bcc909ULL);
    for (std::uint64_t label : labels) h = mix64(h ^ mix64(label + 0xbb67ae8584caa73bULL));
    return RandomSource(seed_, h);
  }

  constexpr TrialRng trial(std::uint64_t index) const noexcept {
    std::uint64_t h = mix64(seed_ + 0x3c6ef372fe94f82bULL);
    h = mix64(h ^ (stream_ + 0xa54ff53a5f1d36f1ULL));
    h = mix64(h ^ (index + 0x510e527fade682d1ULL));
    return TrialRng(h);
  }

  friend constexpr bool operator==(const RandomSource&, const RandomSource&) = default;

 private:
  std::uint64_t seed_;
  std::uint64_t stream_;
};

}  // namespace logwalk
