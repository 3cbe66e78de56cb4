#include "slab/presets.hpp"

#include <cmath>

#include "slab/errors.hpp"
#include "slab/kernels.hpp"

namespace slab {

double preset_bump(double s, double L, double amplitude) {
  const double w = L / 6.0;
  const double q = s * s / (2.0 * w * w);
  return amplitude * (1.0 - q) * std::exp(-q);
}

namespace {

// r0 on the horizontal grid with the integral corrected to exactly zero by a
// proportional Gaussian blob (keeps decay and radial symmetry)
PlanarField make_radial_r0(double amplitude,
                           std::shared_ptr<const PlanarGrid> grid) {
  PlanarField r0(grid);
  PlanarField blob(grid);
  const double w = grid->L / 6.0;
  for (int j = 0; j < grid->Ny; ++j)
    for (int i = 0; i < grid->Nx; ++i) {
      const double s2 = grid->x[i] * grid->x[i] + grid->y[j] * grid->y[j];
      r0.at(i, j) = preset_bump(std::sqrt(s2), grid->L, amplitude);
      blob.at(i, j) = std::exp(-s2 / (2.0 * w * w));
    }
  const double excess = integral(r0) / integral(blob);
  kernels::axpy(-excess, blob.v, r0.v);
  return r0;
}

FluidState from_planar_data(const PlanarField& r0, const PlanarVec& U0,
                            const StaticProfile& profile,
                            const SimParams& params,
                            std::shared_ptr<const SlabGrid> grid) {
  FluidState st(grid);
  const std::size_t plane = static_cast<std::size_t>(grid->Nx) * grid->Ny;
  const double epsm =
      std::isinf(params.epsilon) ? 1.0 : std::pow(params.epsilon, params.m);
  for (int iz = 0; iz < grid->Nz; ++iz)
    for (std::size_t p = 0; p < plane; ++p) {
      const std::size_t i = plane * iz + p;
      st.rho.v[i] = profile.rho.v[i] + epsm * r0.v[p];
      st.mom[0].v[i] = st.rho.v[i] * U0[0].v[p];
      st.mom[1].v[i] = st.rho.v[i] * U0[1].v[p];
      st.mom[2].v[i] = 0.0;
    }
  enforce_parity(st.rho);
  enforce_parity(st.mom);
  return st;
}

}  // namespace

FluidState make_preset(const std::string& name, double amplitude,
                       const StaticProfile& profile, const SimParams& params,
                       std::shared_ptr<const SlabGrid> grid) {
  auto planar = grid->horizontal;
  if (name == "vortex") {
    // Taylor-Green cell windowed onto the static plateau (the flow should
    // not ride across the taper band), re-projected to divergence-free
    const double k = M_PI / grid->L;
    const double a = 0.55 * grid->L, b = 0.75 * grid->L;
    PlanarField r0(planar);  // zero
    PlanarVec U0(planar);
    for (int j = 0; j < planar->Ny; ++j)
      for (int i = 0; i < planar->Nx; ++i) {
        const double x = planar->x[i], y = planar->y[j];
        const double s = std::hypot(x, y);
        double w = 1.0;
        if (s >= b) {
          w = 0.0;
        } else if (s > a) {
          const double t = (s - a) / (b - a);
          w = 1.0 - t * t * t * (10.0 + t * (-15.0 + 6.0 * t));
        }
        U0[0].at(i, j) = amplitude * std::sin(k * x) * std::cos(k * y) * w;
        U0[1].at(i, j) = -amplitude * std::cos(k * x) * std::sin(k * y) * w;
      }
    PlanarWorkspace pws(planar);
    U0 = pws.leray(U0);
    return from_planar_data(r0, U0, profile, params, grid);
  }
  if (name == "balanced-radial" || name == "unbalanced") {
    PlanarField r0 = make_radial_r0(amplitude, planar);
    PlanarVec U0(planar);
    if (name == "balanced-radial") {
      // U0 = grad^perp(P'(rho_tilde) r0): geostrophically balanced
      PlanarField R(planar);
      kernels::mul(profile.Pp_h.v, r0.v, R.v);
      PlanarWorkspace pws(planar);
      PlanarVec g = pws.grad(R);
      kernels::lincomb(-1.0, g[1].v, 0.0, g[1].v, U0[0].v);
      kernels::copy(g[0].v, U0[1].v);
    }
    return from_planar_data(r0, U0, profile, params, grid);
  }
  throw ConfigError("unknown preset: " + name);
}

ScalarField random_band_limited(std::shared_ptr<const SlabGrid> grid,
                                SpectralWorkspace& ws, const Rng& rng,
                                double kfrac, Parity parity) {
  ScalarField f(grid, parity);
  for (std::size_t i = 0; i < f.v.size(); ++i)
    f.v[i] = rng.symmetric(static_cast<std::uint64_t>(i));

  std::vector<Complex> spec;
  ws.forward(f, spec);
  const int Nx = grid->Nx, Ny = grid->Ny, Nz = grid->Nz;
  const int Nxc = Nx / 2 + 1;
  auto keep = [&](int idx, int n) {
    const int k = (idx <= n / 2 - 1) ? idx : idx - n;
    return std::abs(k) <= kfrac * (n / 2);
  };
  std::size_t c = 0;
  for (int iz = 0; iz < Nz; ++iz)
    for (int iy = 0; iy < Ny; ++iy)
      for (int ix = 0; ix < Nxc; ++ix, ++c) {
        const bool inside = keep(ix, Nx) && keep(iy, Ny) && keep(iz, Nz);
        if (!inside || (ix == 0 && iy == 0 && iz == 0))
          spec[c] = Complex(0.0, 0.0);
      }
  ws.inverse(spec, f);
  enforce_parity(f);
  const double n2 = l2_norm(f);
  if (n2 > 0.0) kernels::scale(f.v, 1.0 / n2);
  return f;
}

}  // namespace slab
