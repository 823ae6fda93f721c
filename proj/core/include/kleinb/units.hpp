#pragma once

// Natural units throughout the library: mc^2 = c = hbar = 1.
// Energies are in mc^2, momenta are c*p in mc^2, lengths are in Compton
// units hbar/(mc), times are in hbar/(mc^2).

#include <string_view>

namespace kleinb {

// Dimensionless cyclotron ratio b = hbar*omega / mc^2 with omega = |e|H/(mc).
class FieldStrength {
 public:
  FieldStrength() = default;
  explicit FieldStrength(double b);

  double b() const noexcept { return b_; }

  // L = b^{-1/2}; infinite for b = 0.
  double magnetic_length() const noexcept;

  // C_n = 2 b n, the magnetic channel energy in (mc^2)^2.
  double channel_energy(int n) const noexcept { return 2.0 * b_ * n; }

 private:
  double b_ = 0.0;
};

enum class Spin { Up, Down };

std::string_view to_string(Spin spin) noexcept;
Spin parse_spin(std::string_view text);

// Incoming electron. `n` is the shared index of the degenerate pair:
// Up means the state (+, n-1), Down means (-, n).
struct IncomingState {
  Spin spin = Spin::Down;
  int n = 0;
};

enum class Regime {
  CaseI,    // propagating inside the step below the gap (Klein regime)
  CaseII,   // propagating above the step
  CaseIII,  // evanescent, total reflection; includes both boundaries
};

std::string_view to_string(Regime regime) noexcept;

// A validated scattering problem. Only make_channel constructs one.
class ChannelParams {
 public:
  double energy() const noexcept { return energy_; }
  double step_height() const noexcept { return step_height_; }
  const FieldStrength& field() const noexcept { return field_; }
  const IncomingState& state() const noexcept { return state_; }
  Spin spin() const noexcept { return state_.spin; }
  int n() const noexcept { return state_.n; }

  double channel_energy() const noexcept { return field_.channel_energy(state_.n); }
  // M_n = (1 + C_n)^{1/2}
  double channel_mass() const noexcept;
  // No spin-flip channel: b = 0 or the non-degenerate state (-, 0).
  bool flip_suppressed() const noexcept { return channel_energy() == 0.0; }

  Regime regime() const noexcept;

 private:
  friend ChannelParams make_channel(double, double, double, Spin, int);
  ChannelParams(double energy, double step_height, FieldStrength field, IncomingState state)
      : energy_(energy), step_height_(step_height), field_(field), state_(state) {}

  double energy_;
  double step_height_;
  FieldStrength field_;
  IncomingState state_;
};

// Throws ScatterError: InvalidArgument (non-finite, V0 < 0, n < 0),
// NegativeField, InvalidSpinIndex (Up with n = 0), ClosedChannel (E <= M_n).
ChannelParams make_channel(double energy, double step_height, double b, Spin spin, int n);

// Regime from E - V0 against the channel mass.
Regime classify_regime(double energy, double step_height, double channel_mass) noexcept;

}  // namespace kleinb
