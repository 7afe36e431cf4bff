#pragma once

#include <cstdint>
#include <initializer_list>
#include <limits>
#include <random>

namespace oschar {

/// SplitMix64 finalizer.
std::uint64_t splitmix64(std::uint64_t x);

/// Seed of the sub-stream reached from `seed` by the path of stream ids,
/// e.g. {side, chunk}. Distinct paths give unrelated mt19937_64 seeds.
std::uint64_t derive_seed(std::uint64_t seed,
                          std::initializer_list<std::uint64_t> path);

/// mt19937_64 keyed by (seed, stream path). Every output is fixed by the
/// C++ standard, so draws are reproducible across platforms and compilers.
class Rng {
 public:
  using result_type = std::uint64_t;

  Rng(std::uint64_t seed, std::initializer_list<std::uint64_t> path)
      : engine_(derive_seed(seed, path)) {}

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() {
    return std::numeric_limits<result_type>::max();
  }
  result_type operator()() { return engine_(); }

  /// Uniform on the open interval (0, 1), 53 bits.
  double uniform() {
    return (static_cast<double>(engine_() >> 11) + 0.5) * 0x1.0p-53;
  }

  /// Unbiased integer in [0, bound), bound > 0.
  std::uint64_t below(std::uint64_t bound);

 private:
  std::mt19937_64 engine_;
};

}  // namespace oschar
