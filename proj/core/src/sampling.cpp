#include "kleinb/sampling.hpp"

#include <cmath>
#include <cstdlib>
#include <string>

namespace kleinb {

namespace {

double log_uniform(std::mt19937_64& rng, double lo, double hi) {
  std::uniform_real_distribution<double> u(std::log(lo), std::log(hi));
  return std::exp(u(rng));
}

}  // namespace

ChannelParams sample_channel(std::mt19937_64& rng, Regime regime, const SampleDomain& domain) {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::uniform_int_distribution<int> index(0, domain.n_max);

  const Spin spin = unit(rng) < 0.5 ? Spin::Up : Spin::Down;
  int n = index(rng);
  if (spin == Spin::Up && n == 0) n = 1;
  const double b = unit(rng) < domain.zero_field_fraction ? 0.0 : domain.b_max * unit(rng);
  const double mass = std::sqrt(1.0 + 2.0 * b * n);
  const double energy = mass + log_uniform(rng, domain.min_excess, domain.max_excess);

  double v0 = 0.0;
  switch (regime) {
    case Regime::CaseII: v0 = (energy - mass) * 0.999 * unit(rng); break;
    case Regime::CaseIII: v0 = energy + mass * (2.0 * unit(rng) - 1.0); break;
    case Regime::CaseI: v0 = energy + mass + log_uniform(rng, 1e-3, domain.max_depth); break;
  }
  return make_channel(energy, v0, b, spin, n);
}

std::vector<ChannelParams> sample_grid(std::uint64_t seed, std::size_t count, const SampleDomain& domain) {
  std::mt19937_64 rng(seed);
  constexpr Regime kCycle[] = {Regime::CaseI, Regime::CaseII, Regime::CaseIII};
  std::vector<ChannelParams> out;
  out.reserve(count);
  for (std::size_t i = 0; i < count; ++i) out.push_back(sample_channel(rng, kCycle[i % 3], domain));
  return out;
}

std::uint64_t seed_from_env(std::uint64_t fallback) {
  const char* raw = std::getenv("KLEINB_SEED");
  if (raw == nullptr || *raw == '\0') return fallback;
  try {
    std::size_t used = 0;
    const unsigned long long v = std::stoull(raw, &used, 0);
    return used == std::string(raw).size() ? v : fallback;
  } catch (const std::exception&) {
    return fallback;
  }
}

}  // namespace kleinb
