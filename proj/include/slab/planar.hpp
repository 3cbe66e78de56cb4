#pragma once

#include <functional>
#include <memory>
#include <vector>

#include "slab/field.hpp"
#include "slab/spectral.hpp"

namespace slab {

/// 2D incompressible Navier-Stokes in vorticity-streamfunction form; the
/// pressure of the momentum formulation is never formed.
struct PlanarState {
  PlanarField omega;
  double time = 0.0;
};

struct PlanarDiagRow {
  double time = 0.0;
  double energy = 0.0;     // 1/2 ||U||^2
  double enstrophy = 0.0;  // 1/2 ||omega||^2
};

struct PlanarRunResult {
  std::vector<PlanarDiagRow> rows;
  PlanarState final_state;
};

class PlanarSolver {
 public:
  PlanarSolver(std::shared_ptr<const PlanarGrid> grid, double mu);

  const PlanarGrid& grid() const { return *grid_; }
  double mu() const { return mu_; }
  PlanarWorkspace& workspace() { return ws_; }

  /// Theorem-m1 initial data: vertical-average the horizontal components,
  /// Leray-project, take curl_h.
  PlanarState project_initial(const VectorField& U0) const;
  PlanarState from_velocity(const PlanarVec& U) ;

  PlanarField streamfunction(const PlanarState& s);  // lap psi = omega, zero mean
  PlanarVec velocity(const PlanarState& s);          // U = grad^perp psi

  /// RK4 on the dealiased advection term with exact integrating-factor
  /// treatment of the viscosity.
  PlanarState step2d(const PlanarState& s, double dt);
  double cfl_limit(const PlanarState& s);

  double energy(const PlanarState& s);
  double enstrophy(const PlanarState& s);

  using Observer = std::function<void(const PlanarState&, const PlanarDiagRow&)>;
  PlanarRunResult run2d(const PlanarState& initial, double T_end,
                        int n_outputs, const Observer& observer = nullptr);

 private:
  std::vector<Complex> nonlinear(const std::vector<Complex>& what);

  std::shared_ptr<const PlanarGrid> grid_;
  double mu_;
  PlanarWorkspace ws_;
};

}  // namespace slab
