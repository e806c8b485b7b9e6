#pragma once

#include <cstdint>
#include <random>

namespace locest {

/// Seedable 64-bit generator. Distinct (seed, stream) pairs give independent
/// streams; all transforms are implemented here so draws do not depend on the
/// standard library's distribution implementations.
class Rng {
 public:
  explicit Rng(std::uint64_t seed, std::uint64_t stream = 0);

  std::uint64_t next_u64() { return engine_(); }

  /// Uniform on [0, 1) with 53 random bits.
  double uniform();
  /// Uniform on (0, 1).
  double uniform_open();
  /// Standard normal via the polar Box-Muller transform.
  double normal();
  /// Uniform index in [0, n).
  std::uint64_t below(std::uint64_t n);

  /// Child generator for an independent sub-stream.
  Rng split(std::uint64_t stream) const;

  std::uint64_t seed() const noexcept { return seed_; }
  std::uint64_t stream() const noexcept { return stream_; }

 private:
  std::mt19937_64 engine_;
  std::uint64_t seed_;
  std::uint64_t stream_;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

}  // namespace locest
