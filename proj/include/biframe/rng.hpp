#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>

namespace biframe {

/// Counter-based SplitMix64 stream.
///
/// Output i (i = 0, 1, ...) is mix64(seed + (i + 1) * 0x9E3779B97F4A7C15), where mix64 is the
/// SplitMix64 finalizer. Doubles take the top 53 bits; normals use Box-Muller on two uniforms
/// (cosine branch only), so every language that implements these three lines reproduces the
/// same sweep.
class CounterRng {
 public:
  static constexpr std::uint64_t kGamma = 0x9E3779B97F4A7C15ULL;

  explicit CounterRng(std::uint64_t seed) noexcept : seed_(seed) {}

  static constexpr std::uint64_t mix64(std::uint64_t z) noexcept {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

  /// Independent stream keyed by (seed, tag).
  CounterRng split(std::uint64_t tag) const noexcept { return CounterRng(mix64(seed_ ^ mix64(tag + kGamma))); }

  std::uint64_t next_u64() noexcept { return mix64(seed_ + (++counter_) * kGamma); }

  /// Uniform on [0, 1).
  double uniform() noexcept { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) noexcept { return lo + (hi - lo) * uniform(); }

  double normal() noexcept {
    const double u1 = 1.0 - uniform();  // (0, 1]
    const double u2 = uniform();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
  }

  /// Uniform integer in [lo, hi].
  std::int64_t integer(std::int64_t lo, std::int64_t hi) noexcept {
    const auto span = static_cast<std::uint64_t>(hi - lo) + 1;
    return lo + static_cast<std::int64_t>(next_u64() % span);
  }

  std::uint64_t seed() const noexcept { return seed_; }
  std::uint64_t counter() const noexcept { return counter_; }

 private:
  std::uint64_t seed_;
  std::uint64_t counter_ = 0;
};

}  // namespace biframe
