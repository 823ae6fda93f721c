#pragma once

#include <complex>

#include "kleinb/units.hpp"

namespace kleinb {

using complex = std::complex<double>;

// kappa = q*Ecal / (p*Ecal_bar) with Ecal = E + 1, Ecal_bar = E + 1 - V0.
struct KinematicFactor {
  complex kappa;
  complex q;
  double p = 0.0;
  double e_cal = 0.0;
  double e_cal_bar = 0.0;
};

// Reflection and transmission amplitudes for one incoming state.
// R, Rp are the same-spin and reversed-spin reflected amplitudes, T, Tp the
// transmitted ones. T and Tp carry the printed normalization
// (|Ecal_bar * (E - V0)|)^{1/2} / (Ecal * E)^{1/2}, so |T|^2 and |Tp|^2 are
// probability densities of unit-normalized transmitted spinors, not current
// fractions. Use current_budget() for fractions that sum to one.
struct ScatterAmplitudes {
  complex R;
  complex Rp;
  complex T;
  complex Tp;
  Regime regime = Regime::CaseII;
};

// Outgoing currents as fractions of the incident current.
struct CurrentBudget {
  double refl_same = 0.0;
  double refl_flip = 0.0;
  double trans_same = 0.0;
  double trans_flip = 0.0;
  double sum = 0.0;
};

struct TransmissionProbabilities {
  double same = 0.0;  // |T|^2
  double flip = 0.0;  // |T'|^2
};

// Throws SingularStep when |Ecal_bar| < 1e-12 (1 + V0).
KinematicFactor kinematic_factor(const ChannelParams& params);

// Closed-form amplitudes. One complex code path for all three regimes; the
// spin-down result differs from spin-up only in the sign of Rp and Tp.
// Finite at Ecal_bar = 0 (kappa never appears unmultiplied).
ScatterAmplitudes amplitudes(const ChannelParams& params);

// Independent route: builds the 4x4 boundary-matching system from the
// spinor components of the incident, reflected and transmitted waves at
// z = 0 and solves it with a general LU. Throws SingularMatrix.
ScatterAmplitudes solve_boundary_system(const ChannelParams& params);

CurrentBudget current_budget(const ChannelParams& params);
CurrentBudget current_budget(const ChannelParams& params, const ScatterAmplitudes& amps);

TransmissionProbabilities transmission_probabilities(const ScatterAmplitudes& amps) noexcept;

// |T|^2 and |T'|^2 in the limit V0 -> infinity. Independent of V0; the same
// for both members of the degenerate pair.
TransmissionProbabilities klein_limit(Spin spin, int n, double energy, double b);

// Field-free amplitudes R = (1 - kappa)/(1 + kappa) and the matching T.
// Requires E > 1; throws SingularStep like kinematic_factor.
ScatterAmplitudes h0_amplitudes(double energy, double step_height);

}  // namespace kleinb
