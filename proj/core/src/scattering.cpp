#include "kleinb/scattering.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <string>

#include "kleinb/error.hpp"
#include "kleinb/landau.hpp"
#include "spinor_basis.hpp"

namespace kleinb {

namespace {

double singular_step_tolerance(double step_height) { return 1e-12 * (1.0 + step_height); }

// (|Ecal_bar (E - V0)|)^{1/2} / (Ecal E)^{1/2}
double transmitted_prefactor(double e, double v0) {
  return std::sqrt(std::abs(((e - v0) + 1.0) * (e - v0))) / std::sqrt((e + 1.0) * e);
}

ScatterAmplitudes no_step(Regime regime) { return {complex(0.0), complex(0.0), complex(1.0), complex(0.0), regime}; }

}  // namespace

KinematicFactor kinematic_factor(const ChannelParams& params) {
  KinematicFactor k;
  k.p = momentum_left(params);
  k.q = momentum_right(params);
  k.e_cal = params.energy() + 1.0;
  k.e_cal_bar = (params.energy() - params.step_height()) + 1.0;
  if (std::abs(k.e_cal_bar) < singular_step_tolerance(params.step_height()))
    throw ScatterError(ErrorCode::SingularStep,
                       "kinematic factor diverges: V0 = E + 1 (Ecal_bar = " + std::to_string(k.e_cal_bar) + ")");
  k.kappa = k.q * k.e_cal / (k.p * k.e_cal_bar);
  return k;
}

ScatterAmplitudes amplitudes(const ChannelParams& params) {
  const Regime regime = params.regime();
  const double v0 = params.step_height();
  if (v0 == 0.0) return no_step(regime);

  const double e = params.energy();
  const double e_cal = e + 1.0;
  // (E - V0) + 1 is exact near V0 = E + 1, and consistent with q.
  const double e_cal_bar = (e - v0) + 1.0;
  if (std::abs(e_cal_bar) < singular_step_tolerance(v0))
    throw ScatterError(ErrorCode::SingularStep,
                       "transmitted amplitudes diverge at V0 = E + 1 (the two transmitted spinors coincide)");

  const double c_n = params.channel_energy();
  const double s = std::sqrt(c_n);
  const double p = momentum_left(params);
  const complex q = momentum_right(params);

  // p Ecal_bar (1 + kappa) = p Ecal_bar + q Ecal.
  const double left = p * e_cal_bar;
  const complex sum = left + q * e_cal;
  const double coupling = c_n * v0 * v0;

  // Both numerator and denominator of R carry a factor Ecal_bar near
  // Ecal_bar = 0; it is cancelled there using q^2 + C = (E - V0 - 1) Ecal_bar,
  // leaving R = r_num / reduced and denominator Ecal_bar * reduced.
  complex r_num, reduced, denom;
  const bool cancel = e_cal_bar < 1.0;
  if (cancel) {
    const double tail = e_cal * e_cal * (e - v0 - 1.0) - 2.0 * c_n * e_cal + c_n * e_cal_bar;
    const double pp = p * p * e_cal_bar;
    r_num = pp - tail;
    reduced = pp + 2.0 * p * q * e_cal + tail;
    denom = e_cal_bar * reduced;
  } else {
    r_num = (left - q * e_cal) * sum - coupling;
    denom = sum * sum + coupling;
    reduced = denom;
  }
  const double pref = transmitted_prefactor(e, v0);

  ScatterAmplitudes a;
  a.regime = regime;
  a.R = r_num / reduced;
  a.T = pref * 2.0 * p * e_cal * sum / denom;
  if (params.flip_suppressed()) {
    a.Rp = complex(0.0);
    a.Tp = complex(0.0);
  } else {
    a.Rp = 2.0 * (cancel ? p : left) * s * v0 / reduced;
    a.Tp = pref * 2.0 * p * e_cal * s * v0 / denom;
    if (params.spin() == Spin::Down) {
      a.Rp = -a.Rp;
      a.Tp = -a.Tp;
    }
  }
  return a;
}

ScatterAmplitudes solve_boundary_system(const ChannelParams& params) {
  // Extended precision: near V0 = E + 1 the two transmitted columns become
  // nearly parallel and the system conditions like 1/|Ecal_bar|.
  using Real = long double;
  using Matrix = Eigen::Matrix<std::complex<Real>, 4, 4>;
  using Vector = Eigen::Matrix<std::complex<Real>, 4, 1>;
  const detail::WaveBasis<Real> w = detail::wave_basis<Real>(params);

  // Unknowns: R, R', and the transmitted coefficients N_R T, N_R T'.
  Matrix a;
  Vector rhs;
  for (int i = 0; i < 4; ++i) {
    const auto k = static_cast<std::size_t>(i);
    a(i, 0) = w.norm_left * w.reflected[k];
    a(i, 1) = w.norm_left * w.reflected_flip[k];
    a(i, 2) = -w.transmitted[k];
    a(i, 3) = -w.transmitted_flip[k];
    rhs(i) = -w.norm_left * w.incident[k];
  }
  const Eigen::FullPivLU<Matrix> lu(a);
  if (!lu.isInvertible())
    throw ScatterError(ErrorCode::SingularMatrix, "boundary-matching system is singular");
  const Vector x = lu.solve(rhs);
  if (!x.allFinite()) throw ScatterError(ErrorCode::SingularMatrix, "boundary-matching solution not finite");

  const Real e = params.energy();
  const Real v0 = params.step_height();
  const Real unnormalize = std::sqrt(Real(2) * std::abs(((e - v0) + Real(1)) * (e - v0)));
  auto narrow = [](std::complex<Real> z) { return complex(static_cast<double>(z.real()), static_cast<double>(z.imag())); };
  return {narrow(x(0)), narrow(x(1)), narrow(x(2) * unnormalize), narrow(x(3) * unnormalize), params.regime()};
}

CurrentBudget current_budget(const ChannelParams& params) { return current_budget(params, amplitudes(params)); }

CurrentBudget current_budget(const ChannelParams& params, const ScatterAmplitudes& amps) {
  CurrentBudget b;
  b.refl_same = std::norm(amps.R);
  b.refl_flip = std::norm(amps.Rp);
  if (amps.regime != Regime::CaseIII) {
    // Group velocity q/(E - V0) inside the step over p/E outside.
    const double e = params.energy();
    const double weight = e * momentum_right(params).real() / (momentum_left(params) * (e - params.step_height()));
    b.trans_same = weight * std::norm(amps.T);
    b.trans_flip = weight * std::norm(amps.Tp);
  }
  b.sum = b.refl_same + b.refl_flip + b.trans_same + b.trans_flip;
  return b;
}

TransmissionProbabilities transmission_probabilities(const ScatterAmplitudes& amps) noexcept {
  return {std::norm(amps.T), std::norm(amps.Tp)};
}

TransmissionProbabilities klein_limit(Spin spin, int n, double energy, double b) {
  const ChannelParams params = make_channel(energy, 0.0, b, spin, n);
  const double c_n = params.channel_energy();
  const double p = momentum_left(params);
  const double e_cal = energy + 1.0;
  const double pe = p + e_cal;
  const double outer = pe * pe + c_n;
  const double common = e_cal * 4.0 * p * p / (energy * outer * outer);
  return {common * pe * pe, common * c_n};
}

ScatterAmplitudes h0_amplitudes(double energy, double step_height) {
  const ChannelParams params = make_channel(energy, step_height, 0.0, Spin::Down, 0);
  const KinematicFactor k = kinematic_factor(params);
  const double pref = transmitted_prefactor(energy, step_height);
  ScatterAmplitudes a;
  a.regime = params.regime();
  a.R = (1.0 - k.kappa) / (1.0 + k.kappa);
  a.T = pref * 2.0 * k.e_cal / (k.e_cal_bar * (1.0 + k.kappa));
  a.Rp = complex(0.0);
  a.Tp = complex(0.0);
  return a;
}

}  // namespace kleinb
