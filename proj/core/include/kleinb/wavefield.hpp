#pragma once

#include <array>
#include <complex>
#include <cstddef>
#include <vector>

#include "kleinb/scattering.hpp"
#include "kleinb/units.hpp"

namespace kleinb {

using Spinor = std::array<std::complex<double>, 4>;

// Upper bound on ny * nz accepted by assemble_field.
inline constexpr std::size_t kMaxGridPoints = std::size_t{1} << 24;

// Uniform sample grid; y transverse, z along the beam (Compton units).
// Both ends are included.
struct GridSpec {
  double y_min = -6.0;
  double y_max = 6.0;
  std::size_t ny = 512;
  double z_min = -10.0;
  double z_max = 10.0;
  std::size_t nz = 512;

  double dy() const noexcept;
  double dz() const noexcept;
  double y(std::size_t iy) const noexcept { return y_min + static_cast<double>(iy) * dy(); }
  double z(std::size_t iz) const noexcept { return z_min + static_cast<double>(iz) * dz(); }
};

// Guiding center y0 = kx L^2 with L = 1 when b = 0.
double guiding_center(const ChannelParams& params, double kx);
double transverse_length(const ChannelParams& params) noexcept;

// y in y0 +- (6 + sqrt(2n+1)) L, z in +-10 de Broglie wavelengths, 512 x 512.
GridSpec default_grid(const ChannelParams& params, double kx = 0.0);

class SpinorField {
 public:
  const GridSpec& grid() const noexcept { return grid_; }
  const ChannelParams& params() const noexcept { return params_; }
  const ScatterAmplitudes& amplitudes() const noexcept { return amps_; }
  double guiding_center() const noexcept { return y0_; }
  double transverse_length() const noexcept { return length_; }

  const Spinor& at(std::size_t iy, std::size_t iz) const { return values_[iy * grid_.nz + iz]; }
  double density(std::size_t iy, std::size_t iz) const;

  // Left (z = 0-) and right (z = 0+) expressions evaluated on the boundary.
  const Spinor& boundary_left(std::size_t iy) const { return left_edge_[iy]; }
  const Spinor& boundary_right(std::size_t iy) const { return right_edge_[iy]; }

 private:
  friend SpinorField assemble_field(const ChannelParams&, const ScatterAmplitudes&, const GridSpec&,
                                    double);
  SpinorField(const ChannelParams& params, const ScatterAmplitudes& amps, const GridSpec& grid)
      : params_(params), amps_(amps), grid_(grid) {}

  ChannelParams params_;
  ScatterAmplitudes amps_;
  GridSpec grid_;
  double y0_ = 0.0;
  double length_ = 1.0;
  std::vector<Spinor> values_;
  std::vector<Spinor> left_edge_;
  std::vector<Spinor> right_edge_;
};

// Incident + reflected waves for z < 0, transmitted waves for z >= 0.
// Throws GridTooLarge, InvalidArgument (degenerate grid), SingularStep at
// E = V0 where the transmitted normalization diverges.
SpinorField assemble_field(const ChannelParams& params, const ScatterAmplitudes& amps,
                           const GridSpec& grid, double kx = 0.0);

// max over y and components of |psi(0-) - psi(0+)|, divided by the largest
// boundary component magnitude.
double continuity_residual(const SpinorField& field);

// Longitudinal current psi^dagger alpha_z psi integrated over
// xi = (y - y0)/L at column iz (trapezoid rule on the field samples).
double z_current(const SpinorField& field, std::size_t iz);

// Same quantity from the wave coefficients and oscillator orthonormality.
double z_current_analytic(const ChannelParams& params, const ScatterAmplitudes& amps, double z);

// xi-integrated density at column iz.
double integrated_density(const SpinorField& field, std::size_t iz);

// Least-squares decay constant of the xi-integrated density on z > 0:
// density ~ exp(-rate * z). Returns 0 if fewer than two usable columns.
double fitted_decay_rate(const SpinorField& field);

}  // namespace kleinb
