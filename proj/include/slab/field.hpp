#pragma once

#include <array>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "slab/grid.hpp"

namespace slab {

/// Vertical parity class: the slab realization of complete slip. Density and
/// horizontal velocity components are even in x3, the vertical component odd.
enum class Parity : int { even = +1, odd = -1 };

inline Parity operator*(Parity a, Parity b) {
  return static_cast<int>(a) * static_cast<int>(b) > 0 ? Parity::even
                                                       : Parity::odd;
}
inline Parity flip(Parity p) {
  return p == Parity::even ? Parity::odd : Parity::even;
}

struct ScalarField {
  std::shared_ptr<const SlabGrid> grid;
  Parity parity = Parity::even;
  std::vector<double> v;

  ScalarField() = default;
  ScalarField(std::shared_ptr<const SlabGrid> g, Parity p)
      : grid(std::move(g)), parity(p), v(grid->size(), 0.0) {}

  double& at(int i, int j, int k) { return v[grid->idx(i, j, k)]; }
  double at(int i, int j, int k) const { return v[grid->idx(i, j, k)]; }
  std::span<double> span() { return v; }
  std::span<const double> span() const { return v; }
};

/// Three scalar components; the canonical velocity-like field is
/// (even, even, odd).
struct VectorField {
  std::array<ScalarField, 3> comp;

  VectorField() = default;
  explicit VectorField(std::shared_ptr<const SlabGrid> g,
                       std::array<Parity, 3> p = {Parity::even, Parity::even,
                                                  Parity::odd}) {
    for (int c = 0; c < 3; ++c) comp[c] = ScalarField(g, p[c]);
  }
  ScalarField& operator[](int c) { return comp[c]; }
  const ScalarField& operator[](int c) const { return comp[c]; }
  std::shared_ptr<const SlabGrid> grid() const { return comp[0].grid; }
};

/// Density + momentum snapshot of the primitive system.
struct FluidState {
  ScalarField rho;   // even, positive
  VectorField mom;   // rho*u
  double time = 0.0;

  FluidState() = default;
  explicit FluidState(std::shared_ptr<const SlabGrid> g)
      : rho(g, Parity::even), mom(g) {}
};

struct PlanarField {
  std::shared_ptr<const PlanarGrid> grid;
  std::vector<double> v;

  PlanarField() = default;
  explicit PlanarField(std::shared_ptr<const PlanarGrid> g)
      : grid(std::move(g)), v(grid->size(), 0.0) {}
  double& at(int i, int j) { return v[grid->idx(i, j)]; }
  double at(int i, int j) const { return v[grid->idx(i, j)]; }
};

struct PlanarVec {
  std::array<PlanarField, 2> comp;
  PlanarVec() = default;
  explicit PlanarVec(std::shared_ptr<const PlanarGrid> g)
      : comp{PlanarField(g), PlanarField(g)} {}
  PlanarField& operator[](int c) { return comp[c]; }
  const PlanarField& operator[](int c) const { return comp[c]; }
};

/// Projection onto the declared parity class; idempotent and linear.
void enforce_parity(ScalarField& f);
void enforce_parity(VectorField& f);

/// Pointwise reflection defect max |v(x3) - (+-) v(-x3)|.
double parity_defect(const ScalarField& f);

// Quadrature-weighted norms (trapezoid = exact midpoint rule on the torus)
double integral(const ScalarField& f);
double l2_norm(const ScalarField& f);
double max_abs(const ScalarField& f);
double l2_norm(const VectorField& f);

double integral(const PlanarField& f);
double l2_norm(const PlanarField& f);
double max_abs(const PlanarField& f);
/// L2 norm restricted to the disc |x_h| <= radius.
double l2_region(const PlanarField& f, double radius);
double l2_region(const PlanarVec& f, double radius);

// Self-describing binary field files: magic "SLABF1", little-endian u32
// triplet (Nx,Ny,Nz), u8 parity code (0 even, 1 odd), Nx*Ny*Nz little-endian
// f64 in x-fastest order. Planar fields are written with Nz=1.
void write_field(const std::string& path, const ScalarField& f);
void write_field(const std::string& path, const PlanarField& f);
struct RawField {
  int Nx = 0, Ny = 0, Nz = 0;
  Parity parity = Parity::even;
  std::vector<double> v;
};
RawField read_field(const std::string& path);

/// CSV export, one row per node: x,y,z,value.
void write_field_csv(const std::string& path, const ScalarField& f);

}  // namespace slab
