#pragma once

#include <array>
#include <cstdint>

// Fixed, documented PRNG so generated datasets are reproducible across
// platforms and languages. No platform-default engines or distributions
// anywhere in the generation path.
namespace halloss::synth {

/// xoshiro256++ (Blackman & Vigna), state seeded by four splitmix64 steps.
class Xoshiro256pp {
 public:
  explicit Xoshiro256pp(std::uint64_t seed);

  std::uint64_t next();

  /// Uniform on [0, 1), 53-bit resolution.
  double uniform01();

  /// Uniform on [lo, hi).
  double uniform(double lo, double hi);

  /// Standard normal via Box-Muller. Consumes exactly two uniforms per
  /// draw (the sine partner is discarded) so the stream layout is trivial
  /// to reproduce elsewhere.
  double gaussian();

 private:
  std::array<std::uint64_t, 4> state_;
};

}  // namespace halloss::synth
