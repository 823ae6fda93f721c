#include "kleinb/units.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "kleinb/error.hpp"

namespace kleinb {

FieldStrength::FieldStrength(double b) : b_(b) {
  if (!std::isfinite(b)) throw ScatterError(ErrorCode::InvalidArgument, "field strength b must be finite");
  if (b < 0.0) throw ScatterError(ErrorCode::NegativeField, "field strength b must be >= 0, got " + std::to_string(b));
}

double FieldStrength::magnetic_length() const noexcept {
  if (b_ == 0.0) return std::numeric_limits<double>::infinity();
  return 1.0 / std::sqrt(b_);
}

std::string_view to_string(Spin spin) noexcept { return spin == Spin::Up ? "up" : "down"; }

Spin parse_spin(std::string_view text) {
  if (text == "up" || text == "Up" || text == "+") return Spin::Up;
  if (text == "down" || text == "Down" || text == "-") return Spin::Down;
  throw ScatterError(ErrorCode::InvalidArgument, "spin must be 'up' or 'down', got '" + std::string(text) + "'");
}

std::string_view to_string(Regime regime) noexcept {
  switch (regime) {
    case Regime::CaseI: return "I";
    case Regime::CaseII: return "II";
    case Regime::CaseIII: return "III";
  }
  return "?";
}

double ChannelParams::channel_mass() const noexcept { return std::sqrt(1.0 + channel_energy()); }

Regime ChannelParams::regime() const noexcept {
  return classify_regime(energy_, step_height_, channel_mass());
}

Regime classify_regime(double energy, double step_height, double channel_mass) noexcept {
  const double excess = energy - step_height;
  if (excess > channel_mass) return Regime::CaseII;
  if (excess < -channel_mass) return Regime::CaseI;
  return Regime::CaseIII;
}

ChannelParams make_channel(double energy, double step_height, double b, Spin spin, int n) {
  if (!std::isfinite(energy) || !std::isfinite(step_height))
    throw ScatterError(ErrorCode::InvalidArgument, "E and V0 must be finite");
  if (step_height < 0.0) throw ScatterError(ErrorCode::InvalidArgument, "step height V0 must be >= 0");
  if (n < 0) throw ScatterError(ErrorCode::InvalidArgument, "channel index n must be >= 0");
  const FieldStrength field(b);
  if (spin == Spin::Up && n == 0)
    throw ScatterError(ErrorCode::InvalidSpinIndex, "spin up needs n >= 1: state (+, n-1)");
  const double mass = std::sqrt(1.0 + field.channel_energy(n));
  if (!(energy > mass))
    throw ScatterError(ErrorCode::ClosedChannel,
                       "incoming channel closed: need E^2 > 1 + 2bn (E = " + std::to_string(energy) +
                           ", M_n = " + std::to_string(mass) + ")");
  return ChannelParams(energy, step_height, field, IncomingState{spin, n});
}

}  // namespace kleinb
