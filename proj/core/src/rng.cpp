#include "hermcap/rng.hpp"

namespace hermcap {

namespace {
constexpr std::uint64_t kGamma = 0x9e3779b97f4a7c15ULL;
}

Rng::Rng(std::uint64_t seed) : state_(mix64(seed + kGamma)) {
  if (state_ == 0) state_ = kGamma;
}

std::uint64_t Rng::next() {
  state_ ^= state_ >> 12;
  state_ ^= state_ << 25;
  state_ ^= state_ >> 27;
  return state_ * 0x2545f4914f6cdd1dULL;
}

std::uint64_t Rng::below(std::uint64_t n) {
  // 2^64 mod n, computed without 128-bit arithmetic.
  const std::uint64_t threshold = (0 - n) % n;
  for (;;) {
    const std::uint64_t r = next();
    if (r >= threshold) return r % n;
  }
}

}  // namespace hermcap
