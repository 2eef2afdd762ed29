#pragma once

#include <cstdint>
#include <limits>

namespace hermcap {

/// SplitMix64 finalizer: a bijective 64-bit avalanche permutation.
constexpr std::uint64_t mix64(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

/// xorshift64* generator (shifts 12/25/27, multiplier 0x2545F4914F6CDD1D).
/// The state is mix64(seed + golden gamma), replaced by the gamma itself in
/// the single case where that would be zero.
///
/// Satisfies UniformRandomBitGenerator, but the search code only draws
/// through below() so that streams are identical across standard libraries.
class Rng {
 public:
  using result_type = std::uint64_t;

  explicit Rng(std::uint64_t seed);

  std::uint64_t next();
  std::uint64_t operator()() { return next(); }

  /// Uniform integer in [0, n) by rejection of the biased tail; n > 0.
  std::uint64_t below(std::uint64_t n);

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }

 private:
  std::uint64_t state_;
};

}  // namespace hermcap
