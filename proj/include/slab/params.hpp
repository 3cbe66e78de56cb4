#pragma once

#include <cmath>

namespace slab {

/// Scaling and discretization parameters of the primitive system. The Rossby
/// number scales like epsilon and the Mach number like epsilon^m.
struct SimParams {
  double epsilon = 0.1;  ///< Rossby scale, > 0 (infinity switches the 1/eps terms off)
  double m = 1.0;        ///< Mach exponent, >= 1
  double gamma = 2.0;    ///< adiabatic exponent, > 1
  double mu = 0.1;       ///< shear viscosity, > 0
  double L = M_PI;       ///< horizontal half-width of the box [-L,L)^2
  int Nx = 32;
  int Ny = 32;
  int Nz = 8;
  double dt = 0.0;       ///< time step; 0 selects the CFL-limited step
  double T_end = 1.0;
  double alpha = 0.5;    ///< cut-off exponent for chi_eps
  double delta = 0.02;   ///< mollification scale

  double mach_coeff() const {  // 1/eps^(2m)
    return std::isinf(epsilon) ? 0.0 : std::pow(epsilon, -2.0 * m);
  }
  double rossby_coeff() const {  // 1/eps
    return std::isinf(epsilon) ? 0.0 : 1.0 / epsilon;
  }
  double centrifugal_coeff() const {  // 1/eps^2
    return std::isinf(epsilon) ? 0.0 : 1.0 / (epsilon * epsilon);
  }
  double static_exponent() const {  // eps^(2(m-1))
    if (m == 1.0) return 1.0;
    return std::isinf(epsilon) ? 0.0 : std::pow(epsilon, 2.0 * (m - 1.0));
  }

  /// Throws ConfigError on hard violations; prints a warning to stderr when
  /// gamma is outside the range assumed by the theorem matching m (the
  /// numerics may still explore such configurations).
  void validate() const;
};

}  // namespace slab
