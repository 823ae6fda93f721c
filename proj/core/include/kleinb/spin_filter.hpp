#pragma once

#include "kleinb/units.hpp"

namespace kleinb {

inline constexpr double kElectronG = 2.002319;

// hbar / (m c^2) in seconds, from CODATA 2018 hbar and m_e c^2.
inline constexpr double kHbar = 1.054571817e-34;               // J s
inline constexpr double kElectronRestEnergy = 8.1871057769e-14;  // J
inline constexpr double kNaturalTimeSeconds = kHbar / kElectronRestEnergy;

enum class FilterBranch { Reflected, Transmitted };

struct FilterSetup {
  double energy = 2.0;
  int n = 1;  // shared index of the pair (+, n-1) / (-, n); n >= 1
  double b = 0.1;
  double g = kElectronG;
  double distance = 1.0e6;  // Compton units
  FilterBranch branch = FilterBranch::Reflected;
  double step_height = 0.0;  // used by the transmitted branch only
};

// Longitudinal momenta of the two members of the pair at the common energy,
// with the spin term g b s_z:
//   k_s^2 = W^2 - 1 - 2b (n_orb + 1/2) - g b s_z,
// (n_orb, s_z) = (n-1, +1/2) for up and (n, -1/2) for down, W = E for the
// reflected branch and W = E - V0 for the transmitted one (|k| reported).
struct SplitMomenta {
  double up = 0.0;
  double down = 0.0;
};

SplitMomenta split_momenta(const FilterSetup& setup);

// Arrival-time difference d/v_up - d/v_down with v = k / |W|; positive when
// the (+, n-1) member is slower (g > 2). Units hbar/(mc^2).
double arrival_delay(const FilterSetup& setup);

// Leading order in (g - 2): d |W| (g - 2) b / (2 k0^3), k0 the g = 2 momentum.
double arrival_delay_first_order(const FilterSetup& setup);

inline double to_seconds(double natural_time) { return natural_time * kNaturalTimeSeconds; }

}  // namespace kleinb
