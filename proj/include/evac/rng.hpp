#pragma once

#include <cstdint>
#include <random>

namespace evac {

/// Deterministic RNG with a portable draw sequence.
///
/// mt19937_64 output is pinned by the standard, but the std distribution
/// adapters are not (libstdc++ and libc++ disagree), so the integer/real
/// draws are implemented here directly. Same seed => same sequence on every
/// platform and compiler.
class Rng {
public:
  explicit Rng(std::uint64_t seed) : eng_(seed) {}

  std::uint64_t next() { return eng_(); }

  /// Uniform integer in [0, n). Rejection sampling, no modulo bias.
  std::uint64_t below(std::uint64_t n) {
    // 2^64 mod n; draws below this threshold would over-represent small
    // residues, so reject them.
    const std::uint64_t cutoff = (0 - n) % n;
    std::uint64_t v;
    do {
      v = eng_();
    } while (v < cutoff);
    return v % n;
  }

  /// Uniform double in [0, 1) with 53 random bits.
  double unit() { return static_cast<double>(eng_() >> 11) * 0x1.0p-53; }

private:
  std::mt19937_64 eng_;
};

}  // namespace evac
