#pragma once

#include <memory>
#include <vector>

#include "slab/params.hpp"

namespace slab {

/// Horizontal grid shared by the planar (2D) fields: [-L,L)^2 periodic.
struct PlanarGrid {
  int Nx = 0, Ny = 0;
  double L = 0.0;
  double dx = 0.0, dy = 0.0;
  std::vector<double> x, y;    // nodes
  std::vector<double> kx, ky;  // signed wavenumbers per index, pi*k/L

  std::size_t size() const { return static_cast<std::size_t>(Nx) * Ny; }
  std::size_t idx(int i, int j) const {
    return static_cast<std::size_t>(i) + static_cast<std::size_t>(Nx) * j;
  }
  double cell_area() const { return dx * dy; }
};

/// Truncated slab: [-L,L)^2 periodic in the horizontal, the vertical torus
/// [-1,1) of measure exactly 2. Vertical wavenumbers are kappa_k = pi*k.
struct SlabGrid {
  int Nx = 0, Ny = 0, Nz = 0;
  double L = 0.0;
  double dx = 0.0, dy = 0.0, dz = 0.0;
  std::vector<double> x, y, z;
  std::vector<double> kx, ky, kz;  // signed wavenumbers per index
  std::shared_ptr<const PlanarGrid> horizontal;

  std::size_t size() const {
    return static_cast<std::size_t>(Nx) * Ny * Nz;
  }
  // x-fastest layout, matching the serialized order
  std::size_t idx(int i, int j, int k) const {
    return static_cast<std::size_t>(i) +
           static_cast<std::size_t>(Nx) * (static_cast<std::size_t>(j) +
                                           static_cast<std::size_t>(Ny) * k);
  }
  double cell_volume() const { return dx * dy * dz; }
  /// Mirror node of iz under x3 -> -x3.
  int reflect(int iz) const { return iz == 0 ? 0 : Nz - iz; }
};

std::shared_ptr<const SlabGrid> make_grid(const SimParams& params);
std::shared_ptr<const PlanarGrid> make_planar_grid(int Nx, int Ny, double L);

}  // namespace slab
