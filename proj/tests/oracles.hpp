#pragma once

// Independent numeric oracles used to freeze expected values in the tests.
// These deliberately avoid the closed forms used by the implementation.

#include <cmath>
#include <functional>

namespace oracle {

/// Composite Simpson quadrature of f on [a,b] with n (even) panels.
inline double simpson(const std::function<double(double)>& f, double a,
                      double b, int n = 2000) {
  if (n % 2) ++n;
  const double h = (b - a) / n;
  double acc = f(a) + f(b);
  for (int i = 1; i < n; ++i) acc += f(a + h * i) * (i % 2 ? 4.0 : 2.0);
  return acc * h / 3.0;
}

/// P(rho) = int_1^rho p'(z)/z dz for p(z) = z^gamma, by quadrature.
inline double pressure_potential_quadrature(double rho, double gamma) {
  return simpson(
      [gamma](double z) { return gamma * std::pow(z, gamma - 1.0) / z; }, 1.0,
      rho);
}

/// H(rho) = rho int_1^rho p(z)/z^2 dz by quadrature.
inline double enthalpy_quadrature(double rho, double gamma) {
  return rho * simpson([gamma](double z) { return std::pow(z, gamma - 2.0); },
                       1.0, rho);
}

/// E(rho, rt) assembled purely from quadrature values (H' by central
/// difference).
inline double relative_entropy_quadrature(double rho, double rt,
                                          double gamma) {
  const double h = 1e-6;
  const double dH = (enthalpy_quadrature(rt + h, gamma) -
                     enthalpy_quadrature(rt - h, gamma)) /
                    (2.0 * h);
  return enthalpy_quadrature(rho, gamma) - dH * (rho - rt) -
         enthalpy_quadrature(rt, gamma);
}

}  // namespace oracle
