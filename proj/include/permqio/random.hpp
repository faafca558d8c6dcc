#pragma once

#include <cstdint>

namespace permqio {

/// Counter-based generator: draw i is mix(key + i * golden), so a stream is
/// fully described by (key, counter) and is bit-identical on every platform.
/// Streams are never shared between threads; derive a child with split().
class RandomStream {
 public:
  explicit RandomStream(std::uint64_t seed = 0) noexcept;

  /// Stream keyed by (seed, a, b); used for per-replica / per-step children.
  static RandomStream derive(std::uint64_t seed, std::uint64_t a, std::uint64_t b = 0) noexcept;

  RandomStream split(std::uint64_t index) const noexcept;

  std::uint64_t next_u64() noexcept;
  /// Uniform in [0, 1) with 53 random bits.
  double uniform() noexcept;
  /// Unbiased uniform integer in [0, bound). bound must be > 0.
  std::uint64_t below(std::uint64_t bound) noexcept;

  std::uint64_t key() const noexcept { return key_; }
  std::uint64_t counter() const noexcept { return counter_; }

  friend bool operator==(const RandomStream&, const RandomStream&) = default;

 private:
  std::uint64_t key_;
  std::uint64_t counter_ = 0;
};

std::uint64_t mix64(std::uint64_t x) noexcept;

}  // namespace permqio
