#pragma once

#include <cstdint>
#include <random>

namespace snpvscs {

/// SplitMix64 finaliser; used to derive independent stream seeds.
std::uint64_t splitmix64(std::uint64_t x);

/// Random stream identified by (seed, stream).
///
/// Each stream is an mt19937_64 seeded from a SplitMix64 mix of both ids, so
/// replicate r always sees the same numbers no matter which worker runs it.
/// Uniform and normal draws are implemented here rather than through the
/// <random> distributions so their output does not depend on the standard
/// library vendor.
class StreamRng {
 public:
  using result_type = std::uint64_t;

  StreamRng(std::uint64_t seed, std::uint64_t stream);

  static constexpr result_type min() { return std::mt19937_64::min(); }
  static constexpr result_type max() { return std::mt19937_64::max(); }
  result_type operator()() { return engine_(); }

  /// Uniform on [0, 1) with 53 random bits.
  double uniform();
  /// Standard normal by the Marsaglia polar method.
  double normal();
  bool bernoulli(double probability) { return uniform() < probability; }
  /// Uniform integer in [0, bound) by rejection.
  std::uint64_t below(std::uint64_t bound);

 private:
  std::mt19937_64 engine_;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

}  // namespace snpvscs
