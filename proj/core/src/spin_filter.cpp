#include "kleinb/spin_filter.hpp"

#include <cmath>

#include "kleinb/error.hpp"

namespace kleinb {

namespace {

struct Kinematics {
  double w = 0.0;     // E or E - V0
  double up2 = 0.0;   // k_up^2
  double down2 = 0.0; // k_down^2
  double base2 = 0.0; // g = 2 value
};

Kinematics kinematics(const FilterSetup& s) {
  if (!std::isfinite(s.energy) || !std::isfinite(s.g) || !std::isfinite(s.distance) || !std::isfinite(s.step_height))
    throw ScatterError(ErrorCode::InvalidArgument, "filter setup must be finite");
  if (s.n < 1) throw ScatterError(ErrorCode::InvalidSpinIndex, "the split pair needs n >= 1");
  if (!(s.energy > 0.0)) throw ScatterError(ErrorCode::InvalidArgument, "energy must be positive");
  const FieldStrength field(s.b);
  const bool transmitted = s.branch == FilterBranch::Transmitted;

  Kinematics k;
  k.w = transmitted ? s.energy - s.step_height : s.energy;
  const double b = field.b();
  const double rest = k.w * k.w - 1.0;
  k.base2 = rest - field.channel_energy(s.n);
  k.up2 = rest - 2.0 * b * (s.n - 0.5) - 0.5 * s.g * b;
  k.down2 = rest - 2.0 * b * (s.n + 0.5) + 0.5 * s.g * b;

  if (transmitted) {
    const double mass = std::sqrt(1.0 + field.channel_energy(s.n));
    if (classify_regime(s.energy, s.step_height, mass) == Regime::CaseIII || !(k.up2 > 0.0) || !(k.down2 > 0.0))
      throw ScatterError(ErrorCode::EvanescentBranch, "transmitted beams do not propagate (Case III)");
  } else if (!(k.up2 > 0.0) || !(k.down2 > 0.0) || !(k.base2 > 0.0)) {
    throw ScatterError(ErrorCode::ClosedChannel, "one member of the split pair is closed at this energy");
  }
  return k;
}

}  // namespace

SplitMomenta split_momenta(const FilterSetup& setup) {
  const Kinematics k = kinematics(setup);
  return {std::sqrt(k.up2), std::sqrt(k.down2)};
}

double arrival_delay(const FilterSetup& setup) {
  const Kinematics k = kinematics(setup);
  const double up = std::sqrt(k.up2);
  const double down = std::sqrt(k.down2);
  // 1/k_up - 1/k_down without cancellation; k_down^2 - k_up^2 = (g - 2) b.
  const double gap = (setup.g - 2.0) * setup.b;
  return setup.distance * std::abs(k.w) * gap / (up * down * (up + down));
}

double arrival_delay_first_order(const FilterSetup& setup) {
  const Kinematics k = kinematics(setup);
  const double base = std::sqrt(k.base2);
  return setup.distance * std::abs(k.w) * (setup.g - 2.0) * setup.b / (2.0 * base * base * base);
}

}  // namespace kleinb
