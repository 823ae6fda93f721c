#include "kleinb/landau.hpp"

#include <array>
#include <cmath>
#include <numbers>
#include <string>
#include <vector>

#include "kleinb/error.hpp"

namespace kleinb {

namespace {

constexpr int kRescaleExponent = 512;
constexpr double kRescaleThreshold = 0x1p512;

void check_index(int n) {
  if (n > kMaxOscillatorIndex)
    throw ScatterError(ErrorCode::OscillatorRange,
                       "oscillator index " + std::to_string(n) + " exceeds " + std::to_string(kMaxOscillatorIndex));
}

// Runs the recurrence on h_k = Phi_k exp(xi^2/2) 2^{-scale}; calls sink(k, Phi_k).
template <typename Sink>
void run_recurrence(int n_max, double xi, Sink&& sink) {
  if (!std::isfinite(xi)) throw ScatterError(ErrorCode::InvalidArgument, "oscillator argument must be finite");
  const double gauss_log = -0.5 * xi * xi;
  int scale = 0;
  auto emit = [&](int k, double h) {
    sink(k, h == 0.0 ? 0.0 : h * std::exp(gauss_log + scale * std::numbers::ln2));
  };
  double prev = 0.0;
  double cur = 1.0 / std::sqrt(std::sqrt(std::numbers::pi));
  emit(0, cur);
  for (int k = 0; k < n_max; ++k) {
    const double next = std::sqrt(2.0 / (k + 1)) * xi * cur - std::sqrt(static_cast<double>(k) / (k + 1)) * prev;
    prev = cur;
    cur = next;
    if (std::abs(cur) > kRescaleThreshold) {
      prev = std::ldexp(prev, -kRescaleExponent);
      cur = std::ldexp(cur, -kRescaleExponent);
      scale += kRescaleExponent;
    }
    emit(k + 1, cur);
  }
}

}  // namespace

double oscillator(int n, double xi) {
  if (n < -1) throw ScatterError(ErrorCode::InvalidArgument, "oscillator index must be >= -1");
  if (n == -1) return 0.0;
  check_index(n);
  double value = 0.0;
  run_recurrence(n, xi, [&](int k, double phi) {
    if (k == n) value = phi;
  });
  return value;
}

void oscillator_table(double xi, std::span<double> out) {
  if (out.empty()) return;
  const int n_max = static_cast<int>(out.size()) - 1;
  check_index(n_max);
  run_recurrence(n_max, xi, [&](int k, double phi) { out[static_cast<std::size_t>(k)] = phi; });
}

double level_energy(Spin spin, int n, double cp, double b, double potential) {
  if (n < 0) throw ScatterError(ErrorCode::InvalidSpinIndex, "level index must be >= 0");
  if (!(cp >= 0.0)) throw ScatterError(ErrorCode::InvalidArgument, "cp must be >= 0");
  const FieldStrength field(b);
  const double c = field.channel_energy(spin == Spin::Up ? n + 1 : n);
  return std::sqrt(cp * cp + 1.0 + c) + potential;
}

namespace {

// x^2 - 1 - 2bn for x = a + b_lo, with error-free products and a compensated
// sum. Near a threshold the naive (x - M)(x + M) inherits the rounding of
// M = sqrt(1 + 2bn) and loses digits like M / |x - M|.
double squared_momentum(double x_hi, double x_lo, double b, int n) {
  const double sq = x_hi * x_hi;
  const double sq_err = std::fma(x_hi, x_hi, -sq);
  const double bn = b * static_cast<double>(n);
  const double bn_err = std::fma(b, static_cast<double>(n), -bn);
  const std::array<double, 6> terms{sq, -1.0, -2.0 * bn, sq_err, -2.0 * bn_err, 2.0 * x_hi * x_lo + x_lo * x_lo};
  double sum = 0.0;
  double carry = 0.0;
  for (double t : terms) {
    const double next = sum + t;
    carry += std::abs(sum) >= std::abs(t) ? (sum - next) + t : (t - next) + sum;
    sum = next;
  }
  return sum + carry;
}

}  // namespace

double momentum_left(const ChannelParams& params) {
  const double p2 = squared_momentum(params.energy(), 0.0, params.field().b(), params.n());
  return std::sqrt(std::max(0.0, p2));
}

std::complex<double> momentum_right(const ChannelParams& params) {
  const double e = params.energy();
  const double v0 = params.step_height();
  const double excess = e - v0;
  const double z = excess - e;
  const double excess_err = (e - (excess - z)) + (-v0 - z);
  const double q2 = squared_momentum(excess, excess_err, params.field().b(), params.n());
  switch (params.regime()) {
    case Regime::CaseII: return {std::sqrt(std::max(0.0, q2)), 0.0};
    case Regime::CaseI: return {-std::sqrt(std::max(0.0, q2)), 0.0};
    case Regime::CaseIII: break;
  }
  return {0.0, std::sqrt(std::max(0.0, -q2))};
}

}  // namespace kleinb
