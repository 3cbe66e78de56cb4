#include "slab/field.hpp"

#include <bit>
#include <cmath>
#include <cstdint>
#include <cstring>
#include <fstream>

#include "slab/errors.hpp"
#include "slab/kernels.hpp"

static_assert(std::endian::native == std::endian::little,
              "field serialization assumes a little-endian host");

namespace slab {

void enforce_parity(ScalarField& f) {
  kernels::parity_project(f.v, f.grid->Nx, f.grid->Ny, f.grid->Nz,
                          static_cast<int>(f.parity));
}

void enforce_parity(VectorField& f) {
  for (int c = 0; c < 3; ++c) enforce_parity(f[c]);
}

double parity_defect(const ScalarField& f) {
  const auto& g = *f.grid;
  const double sg = static_cast<double>(f.parity);
  double worst = 0.0;
  for (int k = 0; k < g.Nz; ++k) {
    const int kr = g.reflect(k);
    for (int j = 0; j < g.Ny; ++j)
      for (int i = 0; i < g.Nx; ++i) {
        const double d = std::abs(f.at(i, j, k) - sg * f.at(i, j, kr));
        if (d > worst) worst = d;
      }
  }
  return worst;
}

double integral(const ScalarField& f) {
  return kernels::sum(f.v) * f.grid->cell_volume();
}

double l2_norm(const ScalarField& f) {
  return std::sqrt(kernels::dot(f.v, f.v) * f.grid->cell_volume());
}

double max_abs(const ScalarField& f) { return kernels::max_abs(f.v); }

double l2_norm(const VectorField& f) {
  double s = 0.0;
  for (int c = 0; c < 3; ++c)
    s += kernels::dot(f[c].v, f[c].v) * f[c].grid->cell_volume();
  return std::sqrt(s);
}

double integral(const PlanarField& f) {
  return kernels::sum(f.v) * f.grid->cell_area();
}

double l2_norm(const PlanarField& f) {
  return std::sqrt(kernels::dot(f.v, f.v) * f.grid->cell_area());
}

double max_abs(const PlanarField& f) { return kernels::max_abs(f.v); }

double l2_region(const PlanarField& f, double radius) {
  const auto& g = *f.grid;
  const double r2 = radius * radius;
  double s = 0.0;
  for (int j = 0; j < g.Ny; ++j)
    for (int i = 0; i < g.Nx; ++i) {
      if (g.x[i] * g.x[i] + g.y[j] * g.y[j] <= r2) {
        const double v = f.at(i, j);
        s += v * v;
      }
    }
  return std::sqrt(s * g.cell_area());
}

double l2_region(const PlanarVec& f, double radius) {
  const double a = l2_region(f[0], radius);
  const double b = l2_region(f[1], radius);
  return std::sqrt(a * a + b * b);
}

namespace {

constexpr char kMagic[6] = {'S', 'L', 'A', 'B', 'F', '1'};

void write_raw(const std::string& path, int Nx, int Ny, int Nz, Parity p,
               const std::vector<double>& v) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ConfigError("cannot open for writing: " + path);
  out.write(kMagic, sizeof(kMagic));
  const std::uint32_t dims[3] = {static_cast<std::uint32_t>(Nx),
                                 static_cast<std::uint32_t>(Ny),
                                 static_cast<std::uint32_t>(Nz)};
  out.write(reinterpret_cast<const char*>(dims), sizeof(dims));
  const std::uint8_t code = (p == Parity::even) ? 0 : 1;
  out.write(reinterpret_cast<const char*>(&code), 1);
  out.write(reinterpret_cast<const char*>(v.data()),
            static_cast<std::streamsize>(v.size() * sizeof(double)));
  if (!out) throw ConfigError("short write: " + path);
}

}  // namespace

void write_field(const std::string& path, const ScalarField& f) {
  write_raw(path, f.grid->Nx, f.grid->Ny, f.grid->Nz, f.parity, f.v);
}

void write_field(const std::string& path, const PlanarField& f) {
  write_raw(path, f.grid->Nx, f.grid->Ny, 1, Parity::even, f.v);
}

RawField read_field(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot open for reading: " + path);
  char magic[6];
  in.read(magic, sizeof(magic));
  if (!in || std::memcmp(magic, kMagic, sizeof(kMagic)) != 0)
    throw ConfigError("bad magic in field file: " + path);
  std::uint32_t dims[3];
  in.read(reinterpret_cast<char*>(dims), sizeof(dims));
  std::uint8_t code = 0;
  in.read(reinterpret_cast<char*>(&code), 1);
  if (!in || code > 1) throw ConfigError("bad header in field file: " + path);
  RawField f;
  f.Nx = static_cast<int>(dims[0]);
  f.Ny = static_cast<int>(dims[1]);
  f.Nz = static_cast<int>(dims[2]);
  f.parity = (code == 0) ? Parity::even : Parity::odd;
  f.v.resize(static_cast<std::size_t>(f.Nx) * f.Ny * f.Nz);
  in.read(reinterpret_cast<char*>(f.v.data()),
          static_cast<std::streamsize>(f.v.size() * sizeof(double)));
  if (!in) throw ConfigError("truncated field file: " + path);
  return f;
}

void write_field_csv(const std::string& path, const ScalarField& f) {
  std::ofstream out(path);
  if (!out) throw ConfigError("cannot open for writing: " + path);
  out.precision(17);
  out << "x,y,z,value\n";
  const auto& g = *f.grid;
  for (int k = 0; k < g.Nz; ++k)
    for (int j = 0; j < g.Ny; ++j)
      for (int i = 0; i < g.Nx; ++i)
        out << g.x[i] << ',' << g.y[j] << ',' << g.z[k] << ','
            << f.at(i, j, k) << '\n';
}

}  // namespace slab
