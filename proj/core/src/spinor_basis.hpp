#pragma once

// Spinor components of the five waves at a step, without the plane-wave
// factor and without normalization. For both incoming spins, components 0
// and 2 multiply Phi_{n-1} and components 1 and 3 multiply Phi_n, so
// matching at z = 0 is component by component.
//
// Templated on the real type so the boundary-solve oracle can assemble its
// system in extended precision; momenta are recomputed here from (E, V0, b, n)
// rather than taken from the double-precision evaluators.

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>

#include "kleinb/units.hpp"

namespace kleinb::detail {

template <typename Real>
struct WaveBasis {
  using Coeffs = std::array<std::complex<Real>, 4>;
  Coeffs incident;
  Coeffs reflected;
  Coeffs reflected_flip;
  Coeffs transmitted;
  Coeffs transmitted_flip;
  Real p = 0;
  std::complex<Real> q;
  Real norm_left = 0;   // (2 Ecal E)^{-1/2}
  Real norm_right = 0;  // (2 |Ecal_bar (E - V0)|)^{-1/2}; infinite at E = V0
};

template <typename Real>
WaveBasis<Real> wave_basis(const ChannelParams& params) {
  using c = std::complex<Real>;
  using std::abs;
  using std::sqrt;
  WaveBasis<Real> w;
  const Real e = params.energy();
  const Real v0 = params.step_height();
  const Real c_n = Real(2) * Real(params.field().b()) * Real(params.n());
  const Real mass = sqrt(Real(1) + c_n);
  const Real excess = e - v0;
  const Real e_cal = e + Real(1);
  const Real e_cal_bar = excess + Real(1);
  const Real s = sqrt(c_n);
  const Real p = sqrt((e - mass) * (e + mass));
  const Real q2 = (excess - mass) * (excess + mass);
  c q;
  switch (params.regime()) {
    case Regime::CaseII: q = c(sqrt(std::max(Real(0), q2)), 0); break;
    case Regime::CaseI: q = c(-sqrt(std::max(Real(0), q2)), 0); break;
    case Regime::CaseIII: q = c(0, sqrt(std::max(Real(0), -q2))); break;
  }
  w.p = p;
  w.q = q;
  w.norm_left = Real(1) / sqrt(Real(2) * e_cal * e);
  w.norm_right = Real(1) / sqrt(Real(2) * abs(e_cal_bar * excess));

  const c zero(0);
  if (params.spin() == Spin::Up) {
    // (+, n-1) in, (-, n) flipped
    w.incident = {c(e_cal), zero, c(p), c(s)};
    w.reflected = {c(e_cal), zero, c(-p), c(s)};
    w.reflected_flip = {zero, c(e_cal), c(s), c(p)};
    w.transmitted = {c(e_cal_bar), zero, q, c(s)};
    w.transmitted_flip = {zero, c(e_cal_bar), c(s), -q};
  } else {
    // (-, n) in, (+, n-1) flipped
    w.incident = {zero, c(e_cal), c(s), c(-p)};
    w.reflected = {zero, c(e_cal), c(s), c(p)};
    w.reflected_flip = {c(e_cal), zero, c(-p), c(s)};
    w.transmitted = {zero, c(e_cal_bar), c(s), -q};
    w.transmitted_flip = {c(e_cal_bar), zero, q, c(s)};
  }
  return w;
}

}  // namespace kleinb::detail
