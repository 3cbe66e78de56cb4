#pragma once

#include <memory>
#include <string>

#include "slab/eos.hpp"
#include "slab/field.hpp"
#include "slab/params.hpp"
#include "slab/rng.hpp"
#include "slab/spectral.hpp"

namespace slab {

// Initial-data presets (the theorems only constrain the data by bounds, so
// concrete shapes are fixed here):
//   vortex          - U0 = Taylor-Green cell at the fundamental wavenumber,
//                     r0 = 0 (near-well-prepared; isolates the limit dynamics)
//   balanced-radial - radial zero-mean density bump r0, U0 from geostrophic
//                     balance grad_h(P' r0) + U0^perp = 0 (prepared data)
//   unbalanced      - the same r0 with U0 = 0 (ill-prepared, excites
//                     acoustics)
// All presets satisfy the mass compatibility condition exactly and lie in
// the vertical parity class.
FluidState make_preset(const std::string& name, double amplitude,
                       const StaticProfile& profile, const SimParams& params,
                       std::shared_ptr<const SlabGrid> grid);

/// The radial bump r0(s) used by the balanced presets (before the exact
/// zero-mean correction); width scales with the box size.
double preset_bump(double s, double L, double amplitude);

/// Zero-mean band-limited noise, unit L2 norm, projected onto the given
/// parity class. Spectra are cut at kfrac of the Nyquist index per direction.
ScalarField random_band_limited(std::shared_ptr<const SlabGrid> grid,
                                SpectralWorkspace& ws, const Rng& rng,
                                double kfrac, Parity parity);

}  // namespace slab
