#pragma once

// Binary grid file:
//   offset  0  char[8]  magic "KLNBGRID"
//   offset  8  u32      version (1)
//   offset 12  u32      ny
//   offset 16  u32      nz
//   offset 20  u32      channels per point
//   offset 24  f64      y_min
//   offset 32  f64      dy
//   offset 40  f64      z_min
//   offset 48  f64      dz
//   offset 56  f64      y0 (guiding center)
// followed by ny*nz*channels little-endian f64, row-major [iy][iz][channel].
// Field dumps use 9 channels: rho, Re psi_1, Im psi_1, ..., Re psi_4, Im psi_4.

#include <array>
#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <vector>

#include "kleinb/wavefield.hpp"

namespace kleinb {

inline constexpr std::array<char, 8> kGridMagic = {'K', 'L', 'N', 'B', 'G', 'R', 'I', 'D'};
inline constexpr std::uint32_t kGridVersion = 1;
inline constexpr std::size_t kGridHeaderSize = 64;
inline constexpr std::uint32_t kFieldChannels = 9;

struct GridHeader {
  std::uint32_t version = kGridVersion;
  std::uint32_t ny = 0;
  std::uint32_t nz = 0;
  std::uint32_t channels = 0;
  double y_min = 0.0;
  double dy = 0.0;
  double z_min = 0.0;
  double dz = 0.0;
  double y0 = 0.0;
};

struct GridData {
  GridHeader header;
  std::vector<double> values;

  double at(std::size_t iy, std::size_t iz, std::size_t channel) const {
    return values[(iy * header.nz + iz) * header.channels + channel];
  }
};

void write_grid(std::ostream& out, const SpinorField& field);
void write_grid(std::ostream& out, const GridHeader& header, const std::vector<double>& values);

// Throws std::runtime_error on a bad magic, unknown version or short read.
GridData read_grid(std::istream& in);

}  // namespace kleinb
