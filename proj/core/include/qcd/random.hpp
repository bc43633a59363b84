#pragma once

#include <cstdint>
#include <optional>

namespace qcd {

/// SplitMix64 finalizer; also used to derive independent per-trial seeds.
std::uint64_t splitmix64(std::uint64_t& state);

/// Seed for trial `index` of an experiment rooted at `base`. Pure function of
/// its arguments, so trials can run in any order or on any thread.
std::uint64_t derive_seed(std::uint64_t base, std::uint64_t index);

/// xoshiro256** seeded through SplitMix64.
class Xoshiro256 {
 public:
  explicit Xoshiro256(std::uint64_t seed);

  std::uint64_t next();

  /// Uniform double in the open interval (0, 1).
  double uniform();

 private:
  std::uint64_t s_[4];
};

/// Standard normal deviates via the Marsaglia polar method.
class GaussianSource {
 public:
  explicit GaussianSource(std::uint64_t seed) : rng_(seed) {}

  double next();

 private:
  Xoshiro256 rng_;
  std::optional<double> spare_;
};

}  // namespace qcd
