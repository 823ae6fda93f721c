#include <cmath>
#include <limits>

#include "doctest.h"
#include "kleinb/error.hpp"
#include "kleinb/sampling.hpp"
#include "kleinb/units.hpp"

using namespace kleinb;

namespace {

ErrorCode code_of(auto&& f) {
  try {
    f();
  } catch (const ScatterError& e) {
    return e.code();
  }
  FAIL("expected ScatterError");
  return ErrorCode::InvalidArgument;
}

}  // namespace

TEST_CASE("make_channel accepts an open channel") {
  const ChannelParams p = make_channel(2.0, 5.0, 0.1, Spin::Down, 1);
  CHECK(p.energy() == 2.0);
  CHECK(p.step_height() == 5.0);
  CHECK(p.field().b() == 0.1);
  CHECK(p.n() == 1);
  CHECK(p.channel_energy() == doctest::Approx(0.2));
}

TEST_CASE("make_channel rejections") {
  CHECK(code_of([] { make_channel(1.0, 3.0, 0.0, Spin::Down, 0); }) == ErrorCode::ClosedChannel);
  CHECK(code_of([] { make_channel(2.0, 5.0, 0.1, Spin::Up, 0); }) == ErrorCode::InvalidSpinIndex);
  CHECK(code_of([] { make_channel(2.0, 5.0, -0.1, Spin::Down, 1); }) == ErrorCode::NegativeField);
  CHECK(code_of([] { make_channel(1.09, 0.0, 0.1, Spin::Up, 1); }) == ErrorCode::ClosedChannel);  // 1.09^2 < 1.2
  CHECK(code_of([] { make_channel(-3.0, 0.0, 0.0, Spin::Down, 0); }) == ErrorCode::ClosedChannel);
  CHECK(code_of([] { make_channel(2.0, -1.0, 0.0, Spin::Down, 0); }) == ErrorCode::InvalidArgument);
  CHECK(code_of([] { make_channel(std::nan(""), 1.0, 0.0, Spin::Down, 0); }) == ErrorCode::InvalidArgument);
  CHECK(code_of([] { make_channel(2.0, 1.0, 0.0, Spin::Down, -1); }) == ErrorCode::InvalidArgument);
}

TEST_CASE("channel energy and mass") {
  for (int n = 0; n < 50; ++n) CHECK(FieldStrength(0.0).channel_energy(n) == 0.0);
  const FieldStrength f(0.37);
  CHECK(f.channel_energy(0) == 0.0);
  for (int n = 1; n < 50; ++n) CHECK(f.channel_energy(n) >= f.channel_energy(n - 1));
  CHECK(f.magnetic_length() == doctest::Approx(1.0 / std::sqrt(0.37)));
  CHECK(std::isinf(FieldStrength(0.0).magnetic_length()));

  CHECK(make_channel(2.0, 0.0, 0.0, Spin::Up, 4).channel_mass() == 1.0);
  CHECK(make_channel(2.0, 0.0, 0.5, Spin::Down, 0).channel_mass() == 1.0);
  CHECK(make_channel(2.0, 0.0, 0.5, Spin::Down, 1).channel_mass() > 1.0);
}

TEST_CASE("regime boundaries belong to Case III") {
  CHECK(classify_regime(5.0, 2.0, 1.0) == Regime::CaseII);
  CHECK(classify_regime(2.0, 5.0, 1.0) == Regime::CaseI);
  CHECK(classify_regime(2.0, 2.0, 1.0) == Regime::CaseIII);
  CHECK(classify_regime(3.0, 2.0, 1.0) == Regime::CaseIII);  // E = V0 + M
  CHECK(classify_regime(2.0, 3.0, 1.0) == Regime::CaseIII);  // E = V0 - M
}

TEST_CASE("every sampled channel has exactly one regime and hits all three") {
  int seen[3] = {0, 0, 0};
  for (const ChannelParams& p : sample_grid(7, 3000)) {
    const double m = p.channel_mass();
    const double e = p.energy();
    const double v = p.step_height();
    const int holds = int(v - m > e) + int(e > v + m) + int(v - m <= e && e <= v + m);
    CHECK(holds == 1);
    ++seen[static_cast<int>(p.regime())];
  }
  CHECK(seen[0] > 500);
  CHECK(seen[1] > 500);
  CHECK(seen[2] > 500);
}

TEST_CASE("spin parsing") {
  CHECK(parse_spin("up") == Spin::Up);
  CHECK(parse_spin("down") == Spin::Down);
  CHECK_THROWS_AS(parse_spin("sideways"), ScatterError);
}
