#ifndef TUNENET_RNG_HPP
#define TUNENET_RNG_HPP

#include <cstdint>
#include <random>

namespace tunenet {

// SplitMix64 finalizer; used for seed derivation.
std::uint64_t splitmix64(std::uint64_t x);

// A fresh seed from std::random_device, for runs without an explicit seed.
std::uint64_t entropy_seed();

/// Seeded pseudo-random stream backed by std::mt19937_64.
///
/// The engine's output sequence is fixed by the standard, and the bounded
/// integer / real conversions below are implemented here rather than via
/// <random> distributions (whose algorithms are implementation-defined), so
/// a seed yields the same draws on every platform.
class RngStream {
 public:
  explicit RngStream(std::uint64_t seed) : seed_(seed), engine_(seed) {}

  std::uint64_t seed() const { return seed_; }

  std::uint64_t next_u64() { return engine_(); }

  // Uniform integer in [0, bound); bound must be positive.
  std::uint64_t uniform_below(std::uint64_t bound);

  // Uniform real in [0, 1) with 53 random bits.
  double uniform01() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

 private:
  std::uint64_t seed_;
  std::mt19937_64 engine_;
};

}  // namespace tunenet

#endif  // TUNENET_RNG_HPP
