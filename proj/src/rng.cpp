#include "stochfv/rng.hpp"

#include <cmath>
#include <numbers>

namespace stochfv {

namespace {
constexpr std::uint64_t kGamma = 0x9e3779b97f4a7c15ULL;
}

std::uint64_t mix64(std::uint64_t z) noexcept {
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

CounterRng::CounterRng(StreamKey key) {
  std::uint64_t h = mix64(key.seed + kGamma);
  h = mix64(h ^ (key.sample + 2 * kGamma));
  h = mix64(h ^ (key.step + 3 * kGamma));
  h = mix64(h ^ (key.parameter + 5 * kGamma));
  base_ = h;
}

std::uint64_t CounterRng::next_u64() noexcept {
  ++counter_;
  return mix64(base_ + counter_ * kGamma);
}

double CounterRng::uniform() noexcept { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

double CounterRng::normal() noexcept {
  if (has_cached_) {
    has_cached_ = false;
    return cached_;
  }
  const double u1 = 1.0 - uniform();  // (0, 1]
  const double u2 = uniform();
  const double r = std::sqrt(-2.0 * std::log(u1));
  const double phi = 2.0 * std::numbers::pi * u2;
  cached_ = r * std::sin(phi);
  has_cached_ = true;
  return r * std::cos(phi);
}

}  // namespace stochfv
