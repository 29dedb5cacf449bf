#pragma once

#include <cstdint>
#include <random>

namespace losdof {

/// SplitMix64 finalizer (Steele, Lea, Flood 2014). Used only to turn
/// (seed, index) pairs into well-mixed 64-bit seeds.
constexpr std::uint64_t splitmix64(std::uint64_t x) noexcept
{
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

/// Sub-seed for replica `index` of a run seeded with `seed`. Replica i's
/// stream never depends on how many replicas exist, so trial counts can
/// grow without changing earlier trials.
constexpr std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index) noexcept
{
  return splitmix64(splitmix64(seed) ^ splitmix64(index + 0x632BE59BD9B4E019ULL));
}

/// Seeded generator with a platform-independent output sequence.
///
/// The engine is std::mt19937_64, whose output is fixed by the C++ standard.
/// Floating-point and bounded-integer conversions are done here rather than
/// through <random> distributions, whose algorithms are implementation-defined.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(splitmix64(seed)) {}

  /// Uniform on [0, 1) with 53 random bits.
  double uniform01()
  {
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
  }

  /// Uniform integer on [0, bound) by rejection; bound must be > 0.
  std::uint64_t below(std::uint64_t bound);

 private:
  std::mt19937_64 engine_;
};

}  // namespace losdof
