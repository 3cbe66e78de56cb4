#pragma once

#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "slab/eos.hpp"
#include "slab/field.hpp"
#include "slab/params.hpp"
#include "slab/spectral.hpp"

namespace slab {

/// Right-hand side of the primitive system split by physical term; the parts
/// sum to dmom (and are kept for diagnostics).
struct RhsBundle {
  ScalarField drho;
  VectorField dmom;
  VectorField convection;   // -div(rho u (x) u)
  VectorField coriolis;     // -(1/eps) b x (rho u)
  VectorField pressure;     // -(1/eps^2m) grad p(rho)
  VectorField viscous;      // div S(grad u)
  VectorField centrifugal;  // (1/eps^2) rho grad G
};

struct EnergyReport {
  double kinetic = 0.0;                 // int 1/2 rho |u|^2
  double entropy = 0.0;                 // eps^-2m int E(rho, rho_tilde)
  double cumulative_dissipation = 0.0;  // int_0^t int S(grad u):grad u
  double total() const { return kinetic + entropy + cumulative_dissipation; }
};

struct GeoDiagnostics {
  double geo_residual = 0.0;  // || grad_h R_eps + <u_h>^perp ||_L2(K)
  double div_residual = 0.0;  // || div_h(rho_tilde <u_h>) ||_L2(K)
};

struct DiagnosticsRow {
  double time = 0.0;
  EnergyReport energy;
  double mass_defect = 0.0;  // int (rho - rho_tilde) dx
  GeoDiagnostics geo;
};

struct RunResult {
  std::vector<DiagnosticsRow> rows;
  FluidState final_state;
};

/// Strang-split integrator for the scaled system: the stiff subsystem
/// (pressure gradient linearized about the frozen mean of rho_tilde plus the
/// Coriolis term) is advanced by an exact per-mode propagator, the remaining
/// terms by explicit RK4. The discrete static state is an exact fixed point
/// and total mass is conserved to round-off.
class CompressibleSolver {
 public:
  CompressibleSolver(std::shared_ptr<const SlabGrid> grid,
                     StaticProfile profile, const SimParams& params);

  const StaticProfile& profile() const { return profile_; }
  const SimParams& params() const { return params_; }
  SpectralWorkspace& workspace() { return ws_; }

  /// Full physical right-hand side with per-term decomposition; products are
  /// dealiased and the output is reprojected onto the parity class.
  RhsBundle eval_rhs(const FluidState& state);

  /// One Strang step of size dt (params.dt when dt <= 0). Throws SolverError
  /// on CFL violation (naming the limiting term) or density positivity loss.
  FluidState step(const FluidState& state, double dt = 0.0);

  /// Largest stable step for this state; fills limiting with "advection",
  /// "acoustic-remainder" or "viscosity".
  double cfl_limit(const FluidState& state, std::string* limiting = nullptr);

  double dissipation_rate(const FluidState& state);  // int S(grad u):grad u dx
  EnergyReport energy(const FluidState& state,
                      double cumulative_dissipation = 0.0);
  double mass_defect(const FluidState& state);

  /// Geostrophic balance residuals of the vertically averaged state on the
  /// analysis region K = {|x_h| <= 0.8 L}.
  GeoDiagnostics diagnostics_geostrophic(const FluidState& state);

  /// <(rho - rho_tilde)> / eps^m on the horizontal grid.
  PlanarField r_epsilon_avg(const FluidState& state);
  /// Vertical average of the horizontal velocity components.
  PlanarVec velocity_avg(const FluidState& state);

  using Observer = std::function<void(const FluidState&, const DiagnosticsRow&)>;

  /// Integrate to T_end with n_outputs equally spaced diagnostic emissions
  /// (the step count per segment is chosen so the cadence divides it).
  RunResult run(const FluidState& initial, double T_end, int n_outputs,
                const Observer& observer = nullptr);

 private:
  // spectra of the rho-only explicit forcing (pressure remainder +
  // centrifugal fluctuation), reused across the RK4 stages of one step
  void static_forcing(const ScalarField& rho, std::vector<Complex>* acc0);
  VectorField explicit_rhs(const ScalarField& rho, const VectorField& mom,
                           const std::vector<Complex>* acc0);
  void apply_propagator(FluidState& state);
  void build_propagator(double half_dt);
  void check_positive(const FluidState& state) const;

  std::shared_ptr<const SlabGrid> grid_;
  StaticProfile profile_;
  SimParams params_;
  SpectralWorkspace ws_;
  PlanarWorkspace pws_;
  double pstar_;  // p'(rho_mean), the frozen propagator coefficient
  double built_half_dt_ = -1.0;
  std::vector<double> propagator_;  // 16 doubles per mode, row-major 4x4
};

}  // namespace slab
