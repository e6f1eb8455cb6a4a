#include "nyspca/rng.hpp"

#include <cmath>
#include <numbers>

namespace nyspca {

std::uint64_t splitmix64_mix(std::uint64_t z) noexcept {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

std::uint64_t derive_seed(std::uint64_t base, std::uint64_t tag) noexcept {
  return splitmix64_mix(base + 0x9E3779B97F4A7C15ULL * (tag + 1));
}

CounterRng::CounterRng(std::uint64_t seed, std::uint64_t stream) noexcept
    : key_(splitmix64_mix(seed ^ (stream * 0xD1B54A32D192ED03ULL))) {}

std::uint64_t CounterRng::next_u64() noexcept {
  ++counter_;
  return splitmix64_mix(key_ + counter_ * 0x9E3779B97F4A7C15ULL);
}

double CounterRng::next_uniform() noexcept {
  return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

std::uint64_t CounterRng::next_below(std::uint64_t bound) noexcept {
  // reject the top partial bucket so every residue is equally likely
  const std::uint64_t limit = bound * (UINT64_MAX / bound);
  std::uint64_t v;
  do {
    v = next_u64();
  } while (v >= limit);
  return v % bound;
}

double CounterRng::next_normal() noexcept {
  if (has_spare_) {
    has_spare_ = false;
    return spare_;
  }
  const double u1 = 1.0 - next_uniform();  // (0, 1]
  const double u2 = next_uniform();
  const double radius = std::sqrt(-2.0 * std::log(u1));
  const double angle = 2.0 * std::numbers::pi * u2;
  spare_ = radius * std::sin(angle);
  has_spare_ = true;
  return radius * std::cos(angle);
}

}  // namespace nyspca
