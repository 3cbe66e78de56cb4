#pragma once

#include <memory>
#include <utility>
#include <vector>

#include "slab/compressible.hpp"
#include "slab/eos.hpp"
#include "slab/field.hpp"
#include "slab/params.hpp"
#include "slab/spectral.hpp"

namespace slab {

/// Localized acoustic variables: S = chi (rho - rho_tilde)/eps^m carries the
/// density fluctuation, grad Psi the irrotational part of the localized
/// momentum and Y its solenoidal part.
struct AcousticState {
  ScalarField S;
  ScalarField Psi;
  VectorField Y;
};

AcousticState extract_acoustic(const FluidState& state,
                               const StaticProfile& profile,
                               const SimParams& params, SpectralWorkspace& ws);

/// Exact transform-space solution of the homogeneous wave pair
///   eps^m dS/dt + lap Psi = 0,   eps^m dPsi/dt + p'(1) S = 0,
/// with p'(1) carried explicitly (= gamma for the gamma-law). The zero mode
/// is held constant.
std::pair<ScalarField, ScalarField> wave_propagate(const ScalarField& S0,
                                                   const ScalarField& Psi0,
                                                   double t,
                                                   const SimParams& params,
                                                   SpectralWorkspace& ws);

/// Uniformly sampled forcing for the inhomogeneous pair; sample i sits at
/// time i * t/(n-1).
struct ForcingSample {
  ScalarField fS;
  ScalarField fPsi;
};

/// Homogeneous rotation plus trapezoidal Duhamel convolution of the forcing.
std::pair<ScalarField, ScalarField> wave_propagate_forced(
    const ScalarField& S0, const ScalarField& Psi0,
    const std::vector<ForcingSample>& forcing, double t,
    const SimParams& params, SpectralWorkspace& ws);

/// p'(1) ||S||^2 + ||grad Psi||^2; exactly conserved by wave_propagate.
double acoustic_energy(const ScalarField& S, const ScalarField& Psi,
                       const SimParams& params, SpectralWorkspace& ws);

/// Smooth radial bump: 1 for |x_h| <= radius/2, 0 for |x_h| >= radius.
PlanarField radial_bump(double radius, std::shared_ptr<const PlanarGrid> grid);

/// Time-integrated localized energy of the half-wave group exp(i sqrt(-lap)
/// t/eps^m)[v]: int_0^T int |phi w(t)|^2 dx dt by trapezoidal quadrature over
/// nt samples, phi the radial bump of the given support radius.
double local_energy(const ScalarField& v, double support_radius, double T,
                    const SimParams& params, SpectralWorkspace& ws,
                    int nt = 49);

}  // namespace slab
