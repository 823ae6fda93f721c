#include "kleinb/wavefield.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "kleinb/error.hpp"
#include "kleinb/landau.hpp"
#include "spinor_basis.hpp"

namespace kleinb {

namespace {

using c = std::complex<double>;
using Coeffs = detail::WaveBasis<double>::Coeffs;

const c kI(0.0, 1.0);

// Per-component coefficients of the oscillator functions at longitudinal
// position z, from the left (z < 0) or right (z >= 0) expression.
struct SideCoefficients {
  detail::WaveBasis<double> basis;
  ScatterAmplitudes amps;
  c scaled_t;   // N_R T
  c scaled_tp;  // N_R T'

  SideCoefficients(const ChannelParams& params, const ScatterAmplitudes& a)
      : basis(detail::wave_basis<double>(params)), amps(a) {
    if (!std::isfinite(basis.norm_right))
      throw ScatterError(ErrorCode::SingularStep, "transmitted normalization diverges at E = V0");
    scaled_t = basis.norm_right * amps.T;
    scaled_tp = basis.norm_right * amps.Tp;
  }

  Coeffs left(double z) const {
    const c forward = std::exp(kI * basis.p * z);
    const c backward = std::conj(forward);
    Coeffs out;
    for (std::size_t i = 0; i < 4; ++i) {
      out[i] = basis.norm_left * (forward * basis.incident[i] + amps.R * backward * basis.reflected[i] +
                                  amps.Rp * backward * basis.reflected_flip[i]);
    }
    return out;
  }

  Coeffs right(double z) const {
    const c wave = std::exp(kI * basis.q * z);
    Coeffs out;
    for (std::size_t i = 0; i < 4; ++i)
      out[i] = wave * (scaled_t * basis.transmitted[i] + scaled_tp * basis.transmitted_flip[i]);
    return out;
  }

  Coeffs at(double z) const { return z < 0.0 ? left(z) : right(z); }
};

Spinor apply_profile(const Coeffs& coeffs, double phi_lower, double phi_upper) {
  return {coeffs[0] * phi_lower, coeffs[1] * phi_upper, coeffs[2] * phi_lower, coeffs[3] * phi_upper};
}

double current_density(const Spinor& psi) {
  return 2.0 * (std::conj(psi[0]) * psi[2] - std::conj(psi[1]) * psi[3]).real();
}

double spinor_density(const Spinor& psi) {
  double rho = 0.0;
  for (const auto& v : psi) rho += std::norm(v);
  return rho;
}

template <typename F>
double trapezoid_over_y(const SpinorField& field, F&& f) {
  const GridSpec& g = field.grid();
  double acc = 0.0;
  for (std::size_t iy = 0; iy < g.ny; ++iy) {
    const double w = (iy == 0 || iy + 1 == g.ny) ? 0.5 : 1.0;
    acc += w * f(iy);
  }
  return acc * g.dy() / field.transverse_length();
}

}  // namespace

double GridSpec::dy() const noexcept { return ny > 1 ? (y_max - y_min) / static_cast<double>(ny - 1) : 0.0; }
double GridSpec::dz() const noexcept { return nz > 1 ? (z_max - z_min) / static_cast<double>(nz - 1) : 0.0; }

double transverse_length(const ChannelParams& params) noexcept {
  const double b = params.field().b();
  return b > 0.0 ? params.field().magnetic_length() : 1.0;
}

double guiding_center(const ChannelParams& params, double kx) {
  const double l = transverse_length(params);
  return kx * l * l;
}

GridSpec default_grid(const ChannelParams& params, double kx) {
  const double l = transverse_length(params);
  const double y0 = guiding_center(params, kx);
  const double half_width = (6.0 + std::sqrt(2.0 * params.n() + 1.0)) * l;
  const double wavelength = 2.0 * std::numbers::pi / momentum_left(params);
  GridSpec g;
  g.y_min = y0 - half_width;
  g.y_max = y0 + half_width;
  g.z_min = -10.0 * wavelength;
  g.z_max = 10.0 * wavelength;
  return g;
}

double SpinorField::density(std::size_t iy, std::size_t iz) const { return spinor_density(at(iy, iz)); }

SpinorField assemble_field(const ChannelParams& params, const ScatterAmplitudes& amps, const GridSpec& grid,
                           double kx) {
  if (grid.ny == 0 || grid.nz == 0) throw ScatterError(ErrorCode::InvalidArgument, "grid needs ny, nz >= 1");
  if (!std::isfinite(grid.y_min) || !std::isfinite(grid.y_max) || !std::isfinite(grid.z_min) ||
      !std::isfinite(grid.z_max) || !std::isfinite(kx))
    throw ScatterError(ErrorCode::InvalidArgument, "grid bounds must be finite");
  if (grid.ny > kMaxGridPoints / grid.nz)
    throw ScatterError(ErrorCode::GridTooLarge, "grid of " + std::to_string(grid.ny) + " x " +
                                                    std::to_string(grid.nz) + " exceeds the point limit");

  const SideCoefficients side(params, amps);
  SpinorField field(params, amps, grid);
  field.length_ = transverse_length(params);
  field.y0_ = guiding_center(params, kx);

  std::vector<Coeffs> columns(grid.nz);
  for (std::size_t iz = 0; iz < grid.nz; ++iz) columns[iz] = side.at(grid.z(iz));
  const Coeffs edge_left = side.left(0.0);
  const Coeffs edge_right = side.right(0.0);

  const int n = params.n();
  std::vector<double> phi(static_cast<std::size_t>(n) + 1);
  field.values_.resize(grid.ny * grid.nz);
  field.left_edge_.resize(grid.ny);
  field.right_edge_.resize(grid.ny);
  for (std::size_t iy = 0; iy < grid.ny; ++iy) {
    oscillator_table((grid.y(iy) - field.y0_) / field.length_, phi);
    const double lower = n >= 1 ? phi[static_cast<std::size_t>(n) - 1] : 0.0;
    const double upper = phi[static_cast<std::size_t>(n)];
    for (std::size_t iz = 0; iz < grid.nz; ++iz)
      field.values_[iy * grid.nz + iz] = apply_profile(columns[iz], lower, upper);
    field.left_edge_[iy] = apply_profile(edge_left, lower, upper);
    field.right_edge_[iy] = apply_profile(edge_right, lower, upper);
  }
  return field;
}

double continuity_residual(const SpinorField& field) {
  double worst = 0.0;
  double scale = 0.0;
  for (std::size_t iy = 0; iy < field.grid().ny; ++iy) {
    const Spinor& l = field.boundary_left(iy);
    const Spinor& r = field.boundary_right(iy);
    for (std::size_t i = 0; i < 4; ++i) {
      worst = std::max(worst, std::abs(l[i] - r[i]));
      scale = std::max({scale, std::abs(l[i]), std::abs(r[i])});
    }
  }
  return scale > 0.0 ? worst / scale : worst;
}

double z_current(const SpinorField& field, std::size_t iz) {
  return trapezoid_over_y(field, [&](std::size_t iy) { return current_density(field.at(iy, iz)); });
}

double integrated_density(const SpinorField& field, std::size_t iz) {
  return trapezoid_over_y(field, [&](std::size_t iy) { return field.density(iy, iz); });
}

double z_current_analytic(const ChannelParams& params, const ScatterAmplitudes& amps, double z) {
  const Coeffs k = SideCoefficients(params, amps).at(z);
  // Phi_{n-1} is absent for n = 0.
  const double lower = params.n() >= 1 ? 1.0 : 0.0;
  return 2.0 * (lower * (std::conj(k[0]) * k[2]).real() - (std::conj(k[1]) * k[3]).real());
}

double fitted_decay_rate(const SpinorField& field) {
  const GridSpec& g = field.grid();
  double sz = 0.0, sl = 0.0, szz = 0.0, szl = 0.0;
  std::size_t count = 0;
  for (std::size_t iz = 0; iz < g.nz; ++iz) {
    const double z = g.z(iz);
    if (z <= 0.0) continue;
    const double rho = integrated_density(field, iz);
    if (!(rho > 1e-280) || !std::isfinite(rho)) continue;
    const double l = std::log(rho);
    sz += z;
    sl += l;
    szz += z * z;
    szl += z * l;
    ++count;
  }
  if (count < 2) return 0.0;
  const double m = static_cast<double>(count);
  const double slope = (m * szl - sz * sl) / (m * szz - sz * sz);
  return -slope;
}

}  // namespace kleinb
