#pragma once

#include <complex>
#include <span>

#include "kleinb/units.hpp"

namespace kleinb {

// Largest oscillator index accepted by the evaluators.
inline constexpr int kMaxOscillatorIndex = 200;

// Normalized oscillator function
//   Phi_n(xi) = (2^n n! sqrt(pi))^{-1/2} H_n(xi) exp(-xi^2/2),
// with Phi_{-1} = 0. Evaluated by the normalized three-term recurrence with
// a running power-of-two scale, so large |xi| does not under/overflow
// before the Gaussian is applied.
double oscillator(int n, double xi);

// Phi_0..Phi_{out.size()-1} at xi in one recurrence pass.
void oscillator_table(double xi, std::span<double> out);

// Landau level energy of the state (spin, n) (own index, not the shared one):
// E = sqrt(cp^2 + 1 + C) + V, C = C_{n+1} for (+,n), C = C_n for (-,n).
double level_energy(Spin spin, int n, double cp, double b, double potential);

// Longitudinal momentum left of the step, cp = sqrt(E^2 - 1 - C_n) > 0.
double momentum_left(const ChannelParams& params);

// Longitudinal momentum inside the step, cq^2 = (E - V0)^2 - 1 - C_n.
// Branches: CaseII +|cq|, CaseI -|cq| (rightward group velocity
// cq/(E - V0) > 0), CaseIII +i|cq| (decaying for z -> +inf).
std::complex<double> momentum_right(const ChannelParams& params);

}  // namespace kleinb
