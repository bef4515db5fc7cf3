#pragma once

#include <cstdint>
#include <random>

namespace splab {

/// Portable seeded generator: std::mt19937_64 (bit-exact across standard
/// libraries) feeding 53-bit uniforms in (0, 1), with normal variates drawn
/// by inverse-CDF so that a seed fixes the whole stream on every platform.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  /// Uniform in the open interval (0, 1).
  double uniform();
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
  /// Standard normal via the inverse normal CDF.
  double normal();
  /// Uniform integer in [lo, hi].
  long long integer(long long lo, long long hi);

  std::uint64_t next_u64() { return engine_(); }

 private:
  std::mt19937_64 engine_;
};

/// Inverse of the standard normal CDF, p in (0, 1).
double normal_quantile(double p);

/// Per-case seed derivation used by every Monte Carlo suite.
inline std::uint64_t derive_seed(std::uint64_t base, std::uint64_t index) { return base + index; }

}  // namespace splab
