#include "kleinb/grid_io.hpp"

#include <bit>
#include <cstring>
#include <istream>
#include <ostream>
#include <stdexcept>

namespace kleinb {

namespace {

static_assert(std::endian::native == std::endian::little, "grid I/O assumes a little-endian host");

template <typename T>
void put(std::ostream& out, T value) {
  char bytes[sizeof(T)];
  std::memcpy(bytes, &value, sizeof(T));
  out.write(bytes, sizeof(T));
}

template <typename T>
T get(std::istream& in) {
  char bytes[sizeof(T)];
  if (!in.read(bytes, sizeof(T))) throw std::runtime_error("grid file truncated in header");
  T value;
  std::memcpy(&value, bytes, sizeof(T));
  return value;
}

}  // namespace

void write_grid(std::ostream& out, const GridHeader& header, const std::vector<double>& values) {
  const std::size_t expected = std::size_t{header.ny} * header.nz * header.channels;
  if (values.size() != expected) throw std::invalid_argument("grid payload size does not match header");
  out.write(kGridMagic.data(), kGridMagic.size());
  put(out, header.version);
  put(out, header.ny);
  put(out, header.nz);
  put(out, header.channels);
  put(out, header.y_min);
  put(out, header.dy);
  put(out, header.z_min);
  put(out, header.dz);
  put(out, header.y0);
  out.write(reinterpret_cast<const char*>(values.data()), static_cast<std::streamsize>(values.size() * sizeof(double)));
  if (!out) throw std::runtime_error("failed writing grid file");
}

void write_grid(std::ostream& out, const SpinorField& field) {
  const GridSpec& g = field.grid();
  GridHeader h;
  h.ny = static_cast<std::uint32_t>(g.ny);
  h.nz = static_cast<std::uint32_t>(g.nz);
  h.channels = kFieldChannels;
  h.y_min = g.y_min;
  h.dy = g.dy();
  h.z_min = g.z_min;
  h.dz = g.dz();
  h.y0 = field.guiding_center();

  std::vector<double> values;
  values.reserve(g.ny * g.nz * kFieldChannels);
  for (std::size_t iy = 0; iy < g.ny; ++iy) {
    for (std::size_t iz = 0; iz < g.nz; ++iz) {
      const Spinor& psi = field.at(iy, iz);
      values.push_back(field.density(iy, iz));
      for (const auto& v : psi) {
        values.push_back(v.real());
        values.push_back(v.imag());
      }
    }
  }
  write_grid(out, h, values);
}

GridData read_grid(std::istream& in) {
  std::array<char, 8> magic{};
  if (!in.read(magic.data(), magic.size()) || magic != kGridMagic) throw std::runtime_error("not a grid file (bad magic)");
  GridData d;
  d.header.version = get<std::uint32_t>(in);
  if (d.header.version != kGridVersion) throw std::runtime_error("unsupported grid file version");
  d.header.ny = get<std::uint32_t>(in);
  d.header.nz = get<std::uint32_t>(in);
  d.header.channels = get<std::uint32_t>(in);
  d.header.y_min = get<double>(in);
  d.header.dy = get<double>(in);
  d.header.z_min = get<double>(in);
  d.header.dz = get<double>(in);
  d.header.y0 = get<double>(in);
  d.values.resize(std::size_t{d.header.ny} * d.header.nz * d.header.channels);
  const auto bytes = static_cast<std::streamsize>(d.values.size() * sizeof(double));
  if (!in.read(reinterpret_cast<char*>(d.values.data()), bytes)) throw std::runtime_error("grid file truncated in payload");
  return d;
}

}  // namespace kleinb
