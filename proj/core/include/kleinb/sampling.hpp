#pragma once

#include <cstddef>
#include <cstdint>
#include <random>
#include <vector>

#include "kleinb/units.hpp"

namespace kleinb {

struct SampleDomain {
  int n_max = 20;
  double b_max = 1.0;
  double zero_field_fraction = 0.1;
  // E - M_n is log-uniform in [min_excess, max_excess].
  double min_excess = 1e-3;
  double max_excess = 5.0;
  // CaseI depth V0 - E - M_n is log-uniform in [1e-3, max_depth].
  double max_depth = 1e4;
};

// A random open channel whose step height targets `regime`. The returned
// params are classified from scratch; at the edges they may land in the
// neighbouring regime.
ChannelParams sample_channel(std::mt19937_64& rng, Regime regime, const SampleDomain& domain = {});

// `count` points cycling through the three regimes.
std::vector<ChannelParams> sample_grid(std::uint64_t seed, std::size_t count, const SampleDomain& domain = {});

// KLEINB_SEED if set and parseable, else `fallback`.
std::uint64_t seed_from_env(std::uint64_t fallback);

inline constexpr std::uint64_t kDefaultSeed = 20251016;

}  // namespace kleinb
