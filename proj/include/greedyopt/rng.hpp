#pragma once

#include <cstddef>
#include <cstdint>
#include <random>

namespace greedyopt {

/// Seeded generator used by every randomized routine.
///
/// The engine is std::mt19937_64, whose output sequence is fixed by the C++
/// standard. Distributions are implemented here rather than taken from
/// <random> because the standard distributions are implementation-defined.
/// Substreams are derived by mixing (seed, stream) through SplitMix64, so two
/// runs with the same seed and stream id draw bit-identical sequences.
class Rng {
 public:
  explicit Rng(std::uint64_t seed, std::uint64_t stream = 0);

  std::uint64_t seed() const noexcept { return seed_; }
  std::uint64_t stream() const noexcept { return stream_; }

  std::uint64_t next_u64() { return engine_(); }

  /// Uniform integer in [0, n). Unbiased (rejection sampling).
  std::size_t uniform_index(std::size_t n);

  /// Uniform double in [0, 1) with 53 random bits.
  double uniform01();

  /// Uniform double in the open interval (0, 1).
  double uniform_open01();

  /// Standard normal via Box-Muller; the spare value is cached.
  double normal();

  /// Exponential(1).
  double exponential();

  /// Independent generator for a sub-task, derived deterministically.
  Rng substream(std::uint64_t stream) const { return Rng(seed_, stream_ * 0x9E3779B97F4A7C15ULL + stream + 1); }

 private:
  std::uint64_t seed_;
  std::uint64_t stream_;
  std::mt19937_64 engine_;
  bool has_spare_ = false;
  double spare_ = 0.0;
};

std::uint64_t splitmix64(std::uint64_t x);

}  // namespace greedyopt
