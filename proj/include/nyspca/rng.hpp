#pragma once

#include <cstdint>

namespace nyspca {

/// Counter-based 64-bit generator. The i-th draw of stream (seed, stream) is
///
///   key   = splitmix64_mix(seed ^ (stream * 0xD1B54A32D192ED03))
///   out_i = splitmix64_mix(key + (i + 1) * 0x9E3779B97F4A7C15)
///
/// where splitmix64_mix is the SplitMix64 finalizer. The algorithm is fixed;
/// changing it would invalidate every recorded experiment.
class CounterRng {
 public:
  explicit CounterRng(std::uint64_t seed, std::uint64_t stream = 0) noexcept;

  std::uint64_t next_u64() noexcept;
  /// Uniform on [0, 1) with 53 random bits.
  double next_uniform() noexcept;
  /// Uniform integer in [0, bound) by rejection; bound > 0.
  std::uint64_t next_below(std::uint64_t bound) noexcept;
  /// Standard normal via Box-Muller; pairs are produced cos-first, sin-second.
  double next_normal() noexcept;

  std::uint64_t counter() const noexcept { return counter_; }

 private:
  std::uint64_t key_;
  std::uint64_t counter_ = 0;
  bool has_spare_ = false;
  double spare_ = 0.0;
};

std::uint64_t splitmix64_mix(std::uint64_t z) noexcept;

/// Derives an independent seed from a base seed and a tag (e.g. l).
std::uint64_t derive_seed(std::uint64_t base, std::uint64_t tag) noexcept;

/// Stream identifiers used across the library.
namespace streams {
inline constexpr std::uint64_t selection = 0;
inline constexpr std::uint64_t graph = 1;
inline constexpr std::uint64_t gaussian = 2;
}  // namespace streams

}  // namespace nyspca
