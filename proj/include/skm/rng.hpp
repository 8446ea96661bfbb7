#pragma once

#include <cstdint>

namespace skm {

// Deterministic seeded stream: xoshiro256++ with SplitMix64 state derivation
// from (seed, stream_id). The same pair yields the same draw sequence on any
// platform; distinct stream ids give statistically independent streams.
// Algorithm family is fixed and recorded in run metadata as RNG_VERSION.
inline constexpr const char* RNG_VERSION = "xoshiro256++/sm64-v1";

class RngStream {
 public:
  RngStream() : RngStream(0, 0) {}
  RngStream(std::uint64_t seed, std::uint64_t stream_id);

  std::uint64_t next_u64();

  /// Uniform draw strictly inside (0,1).
  double uniform();

  std::uint64_t seed() const { return seed_; }
  std::uint64_t stream_id() const { return stream_; }

 private:
  std::uint64_t s_[4];
  std::uint64_t seed_;
  std::uint64_t stream_;
};

double draw_uniform(RngStream& rng);
double draw_exponential(RngStream& rng, double rate);
double draw_standard_normal(RngStream& rng);
long draw_poisson(RngStream& rng, double mean);
int draw_bernoulli(RngStream& rng, double p);

/// Standard normal quantile (AS 241), |Phi(Phi^-1(p)) - p| <= 1e-12 relative.
double normal_quantile(double p);

/// Standard normal CDF via erfc.
double normal_cdf(double x);

}  // namespace skm
