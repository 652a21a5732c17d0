#pragma once

#include <cstdint>

namespace stochfv {

/// Identifies one independent random stream. Streams are keyed rather than sequenced so that
/// the order in which Monte Carlo workers run never changes the numbers they draw.
struct StreamKey {
  std::uint64_t seed = 0;
  std::uint64_t sample = 0;
  std::uint64_t step = 0;
  std::uint64_t parameter = 0;
};

/// Counter-based generator: the n-th output is a SplitMix64 finaliser applied to
/// (stream hash + n * golden gamma). Cheap to construct, so one instance per stream is fine.
class CounterRng {
 public:
  explicit CounterRng(StreamKey key = {});

  std::uint64_t next_u64() noexcept;
  /// Uniform on [0, 1) with 53 random bits.
  double uniform() noexcept;
  /// Standard normal via Box-Muller; the second variate of each pair is cached.
  double normal() noexcept;

  std::uint64_t counter() const noexcept { return counter_; }

 private:
  std::uint64_t base_;
  std::uint64_t counter_ = 0;
  double cached_ = 0.0;
  bool has_cached_ = false;
};

std::uint64_t mix64(std::uint64_t z) noexcept;

}  // namespace stochfv
