#pragma once

#include <memory>

#include "slab/field.hpp"
#include "slab/grid.hpp"
#include "slab/params.hpp"

namespace slab {

class SpectralWorkspace;

/// gamma-law pressure p(rho) = rho^gamma (leading coefficient fixed to 1).
/// The closed forms for P, H and the inverse of P power the independent
/// oracles in the test suite.
struct PressureLaw {
  double gamma = 2.0;

  double pressure(double rho) const;            // rho^gamma, rho >= 0
  double dp(double rho) const;                  // p'(rho) = gamma rho^(gamma-1)
  double pressure_potential(double rho) const;  // P = int_1^rho p'(z)/z dz
  double potential_inverse(double y) const;     // P^{-1}
  double Pp(double rho) const;                  // P'(rho) = p'(rho)/rho
  double enthalpy(double rho) const;            // H = rho int_1^rho p(z)/z^2 dz
  double dH(double rho) const;                  // H'
  /// Relative entropy E(rho, rho_tilde) = H(rho) - H'(rt)(rho-rt) - H(rt),
  /// >= 0 with equality iff rho == rho_tilde.
  double relative_entropy(double rho, double rho_tilde) const;
};

/// Centrifugal potential |x_h|^2, tapered smoothly to zero near the box
/// boundary: the taper is identically 1 for |x_h| <= 0.8 L and 0 for
/// |x_h| >= 0.95 L, keeping the profile periodic while the analysis region
/// stays faithful to the paper's G.
struct Potential {
  std::shared_ptr<const PlanarGrid> grid;
  PlanarField values;
};

/// C-infinity ramp: 1 for s <= 0.8L, 0 for s >= 0.95L.
double radial_taper(double s, double L);
/// G(s) = s^2 * taper(s); radial closed form shared with the radial solver.
double centrifugal_G(double s, double L);

Potential make_centrifugal_potential(std::shared_ptr<const PlanarGrid> grid);

/// Static density profile and derived coefficient fields.
struct StaticProfile {
  PressureLaw law;
  ScalarField rho;        // rho_tilde, even, >= 1
  ScalarField p_of_rho;   // p(rho_tilde)
  ScalarField Pp;         // P'(rho_tilde)
  VectorField grad_rho;   // horizontal spectral gradient of rho_tilde
  PlanarField rho_h;      // horizontal trace (rho_tilde is x3-independent)
  PlanarField Pp_h;
  Potential G;
  PlanarVec grad_G;       // spectral gradient of G
  double rho_mean = 1.0;  // box mean of rho_tilde (propagator freeze value)

  double p_prime_frozen() const { return law.dp(rho_mean); }
};

/// Pointwise closed-form solve of P(rho_tilde) = eps^(2(m-1)) G.
StaticProfile solve_static(const SimParams& params, const Potential& G,
                           std::shared_ptr<const SlabGrid> grid,
                           SpectralWorkspace& ws);

}  // namespace slab
