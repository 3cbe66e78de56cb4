#include "slab/grid.hpp"

#include <cmath>
#include <iostream>
#include <sstream>

#include "slab/errors.hpp"

namespace slab {

namespace {

std::vector<double> periodic_nodes(int n, double lo, double period) {
  std::vector<double> v(n);
  for (int i = 0; i < n; ++i) v[i] = lo + period * i / n;
  return v;
}

// Signed wavenumbers for index order 0,1,..,n/2-1,-n/2,..,-1 with the given
// fundamental wavenumber.
std::vector<double> wavenumbers(int n, double k0) {
  std::vector<double> v(n);
  for (int i = 0; i < n; ++i) {
    const int k = (i <= n / 2 - 1) ? i : i - n;
    v[i] = k0 * k;
  }
  return v;
}

void check_size(int n, const char* name) {
  if (n < 4 || n % 2 != 0) {
    std::ostringstream os;
    os << "grid size " << name << "=" << n << " must be even and >= 4";
    throw ConfigError(os.str());
  }
}

}  // namespace

void SimParams::validate() const {
  if (!(epsilon > 0.0)) throw ConfigError("epsilon must be > 0");
  if (!(m >= 1.0)) throw ConfigError("m must be >= 1");
  if (!(gamma > 1.0)) throw ConfigError("gamma must be > 1");
  if (!(mu > 0.0)) throw ConfigError("mu must be > 0");
  if (!(L > 0.0)) throw ConfigError("L must be > 0");
  if (!(dt >= 0.0)) throw ConfigError("dt must be >= 0 (0 selects CFL step)");
  if (!(T_end >= 0.0)) throw ConfigError("T_end must be >= 0");
  check_size(Nx, "Nx");
  check_size(Ny, "Ny");
  check_size(Nz, "Nz");
  if (m == 1.0 && gamma <= 3.0)
    std::cerr << "warning: m=1 with gamma <= 3 is outside the stratified-limit"
                 " hypothesis (gamma > 3)\n";
  if (m > 1.0 && gamma <= 1.5)
    std::cerr << "warning: m>1 with gamma <= 3/2 is outside the multiscale-limit"
                 " hypothesis (gamma > 3/2)\n";
  // the multiscale theorem's admissible cut-off window exists only for
  // m > 10; smaller m deliberately run outside it (logged, not fatal)
  if (m > 10.0 && !(1.0 + 0.5 * m < alpha && alpha < 0.75 * (m - 2.0)))
    std::cerr << "warning: alpha=" << alpha
              << " is outside the window (1 + m/2, 3(m-2)/4) for m=" << m
              << "\n";
}

std::shared_ptr<const PlanarGrid> make_planar_grid(int Nx, int Ny, double L) {
  check_size(Nx, "Nx");
  check_size(Ny, "Ny");
  auto g = std::make_shared<PlanarGrid>();
  g->Nx = Nx;
  g->Ny = Ny;
  g->L = L;
  g->dx = 2.0 * L / Nx;
  g->dy = 2.0 * L / Ny;
  g->x = periodic_nodes(Nx, -L, 2.0 * L);
  g->y = periodic_nodes(Ny, -L, 2.0 * L);
  g->kx = wavenumbers(Nx, M_PI / L);
  g->ky = wavenumbers(Ny, M_PI / L);
  return g;
}

std::shared_ptr<const SlabGrid> make_grid(const SimParams& params) {
  params.validate();
  auto g = std::make_shared<SlabGrid>();
  g->Nx = params.Nx;
  g->Ny = params.Ny;
  g->Nz = params.Nz;
  g->L = params.L;
  g->dx = 2.0 * params.L / params.Nx;
  g->dy = 2.0 * params.L / params.Ny;
  g->dz = 2.0 / params.Nz;
  g->x = periodic_nodes(params.Nx, -params.L, 2.0 * params.L);
  g->y = periodic_nodes(params.Ny, -params.L, 2.0 * params.L);
  g->z = periodic_nodes(params.Nz, -1.0, 2.0);
  g->kx = wavenumbers(params.Nx, M_PI / params.L);
  g->ky = wavenumbers(params.Ny, M_PI / params.L);
  g->kz = wavenumbers(params.Nz, M_PI);  // period 2: kappa_k = pi*k
  g->horizontal = make_planar_grid(params.Nx, params.Ny, params.L);
  return g;
}

}  // namespace slab
