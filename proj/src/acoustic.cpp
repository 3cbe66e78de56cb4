#include "slab/acoustic.hpp"

#include <cmath>

#include "slab/errors.hpp"
#include "slab/kernels.hpp"

namespace slab {

namespace {

double eps_pow_m(const SimParams& p) {
  return std::isinf(p.epsilon) ? 1.0 : std::pow(p.epsilon, p.m);
}

double smoothstep5(double t) {
  if (t <= 0.0) return 0.0;
  if (t >= 1.0) return 1.0;
  return t * t * t * (10.0 + t * (-15.0 + 6.0 * t));
}

}  // namespace

AcousticState extract_acoustic(const FluidState& state,
                               const StaticProfile& profile,
                               const SimParams& params, SpectralWorkspace& ws) {
  auto grid = ws.grid_ptr();
  const PlanarField chi = cutoff_chi(params.epsilon, params.alpha,
                                     grid->horizontal);
  const std::size_t plane = static_cast<std::size_t>(grid->Nx) * grid->Ny;
  const double inv_epsm = 1.0 / eps_pow_m(params);

  AcousticState a;
  a.S = ScalarField(grid, Parity::even);
  VectorField m(grid);
  for (int iz = 0; iz < grid->Nz; ++iz)
    for (std::size_t p = 0; p < plane; ++p) {
      const std::size_t i = plane * iz + p;
      a.S.v[i] = chi.v[p] * (state.rho.v[i] - profile.rho.v[i]) * inv_epsm;
      for (int c = 0; c < 3; ++c) m[c].v[i] = chi.v[p] * state.mom[c].v[i];
    }

  a.Y = ws.helmholtz(m);
  // grad Psi = m - Y; Psi recovered as the zero-mean inverse Laplacian of
  // div m
  ScalarField divm = ws.divergence(m);
  a.Psi = ws.inverse_laplacian(divm);
  return a;
}

std::pair<ScalarField, ScalarField> wave_propagate(const ScalarField& S0,
                                                   const ScalarField& Psi0,
                                                   double t,
                                                   const SimParams& params,
                                                   SpectralWorkspace& ws) {
  const double p1 = params.gamma;  // p'(1) for the gamma-law
  const double theta_scale = t / eps_pow_m(params);
  std::vector<Complex> ss, sp;
  ws.forward(S0, ss);
  ws.forward(Psi0, sp);
  const std::vector<double>& k2 = ws.k2();
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t c = 0; c < static_cast<std::ptrdiff_t>(ss.size()); ++c) {
    if (k2[c] <= 0.0) continue;  // zero mode constant
    const double lam = std::sqrt(p1 * k2[c]);
    const double co = std::cos(lam * theta_scale);
    const double si = std::sin(lam * theta_scale);
    const Complex s = co * ss[c] + (lam / p1) * si * sp[c];
    const Complex q = -(p1 / lam) * si * ss[c] + co * sp[c];
    ss[c] = s;
    sp[c] = q;
  }
  ScalarField S(ws.grid_ptr(), S0.parity), Psi(ws.grid_ptr(), Psi0.parity);
  ws.inverse(ss, S);
  ws.inverse(sp, Psi);
  return {std::move(S), std::move(Psi)};
}

std::pair<ScalarField, ScalarField> wave_propagate_forced(
    const ScalarField& S0, const ScalarField& Psi0,
    const std::vector<ForcingSample>& forcing, double t,
    const SimParams& params, SpectralWorkspace& ws) {
  if (forcing.empty()) return wave_propagate(S0, Psi0, t, params, ws);
  if (forcing.size() < 2)
    throw ConfigError("wave_propagate_forced: need >= 2 forcing samples");

  const double p1 = params.gamma;
  const double em = eps_pow_m(params);
  const std::size_t n = forcing.size();
  const double h = t / static_cast<double>(n - 1);
  const std::vector<double>& k2 = ws.k2();

  std::vector<Complex> ss, sp, fs, fp;
  ws.forward(S0, ss);
  ws.forward(Psi0, sp);

  // homogeneous part
  auto rotate = [&](std::vector<Complex>& a, std::vector<Complex>& b,
                    double tau) {
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t c = 0; c < static_cast<std::ptrdiff_t>(a.size()); ++c) {
      if (k2[c] <= 0.0) continue;
      const double lam = std::sqrt(p1 * k2[c]);
      const double co = std::cos(lam * tau / em);
      const double si = std::sin(lam * tau / em);
      const Complex s = co * a[c] + (lam / p1) * si * b[c];
      const Complex q = -(p1 / lam) * si * a[c] + co * b[c];
      a[c] = s;
      b[c] = q;
    }
  };
  rotate(ss, sp, t);

  // trapezoidal Duhamel: + sum_i w_i E(t - t_i) F(t_i) / eps^m
  for (std::size_t i = 0; i < n; ++i) {
    const double ti = h * static_cast<double>(i);
    const double w = (i == 0 || i == n - 1) ? 0.5 * h : h;
    ws.forward(forcing[i].fS, fs);
    ws.forward(forcing[i].fPsi, fp);
    rotate(fs, fp, t - ti);
    const double scale = w / em;
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t c = 0; c < static_cast<std::ptrdiff_t>(ss.size());
         ++c) {
      ss[c] += scale * fs[c];
      sp[c] += scale * fp[c];
    }
  }

  ScalarField S(ws.grid_ptr(), S0.parity), Psi(ws.grid_ptr(), Psi0.parity);
  ws.inverse(ss, S);
  ws.inverse(sp, Psi);
  return {std::move(S), std::move(Psi)};
}

double acoustic_energy(const ScalarField& S, const ScalarField& Psi,
                       const SimParams& params, SpectralWorkspace& ws) {
  const double p1 = params.gamma;
  VectorField g = ws.grad(Psi);
  const double gp = l2_norm(g);
  const double sn = l2_norm(S);
  return p1 * sn * sn + gp * gp;
}

PlanarField radial_bump(double radius, std::shared_ptr<const PlanarGrid> grid) {
  PlanarField phi(grid);
  for (int j = 0; j < grid->Ny; ++j)
    for (int i = 0; i < grid->Nx; ++i) {
      const double s = std::hypot(grid->x[i], grid->y[j]);
      phi.at(i, j) = 1.0 - smoothstep5((s - 0.5 * radius) / (0.5 * radius));
    }
  return phi;
}

double local_energy(const ScalarField& v, double support_radius, double T,
                    const SimParams& params, SpectralWorkspace& ws, int nt) {
  if (nt < 2) throw ConfigError("local_energy: nt must be >= 2");
  auto grid = ws.grid_ptr();
  const PlanarField phi = radial_bump(support_radius, grid->horizontal);
  const double em = eps_pow_m(params);
  const std::vector<double>& k2 = ws.k2();

  std::vector<Complex> v0, wr, wi;
  ws.forward(v, v0);
  ScalarField re(grid, v.parity), im(grid, v.parity);
  const std::size_t plane = static_cast<std::size_t>(grid->Nx) * grid->Ny;

  double acc = 0.0;
  const double h = T / (nt - 1);
  for (int s = 0; s < nt; ++s) {
    const double tau = h * s / em;
    wr = v0;
    wi = v0;
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t c = 0; c < static_cast<std::ptrdiff_t>(v0.size());
         ++c) {
      const double lam = std::sqrt(k2[c]);
      wr[c] *= std::cos(lam * tau);
      wi[c] *= std::sin(lam * tau);
    }
    ws.inverse(wr, re);
    ws.inverse(wi, im);
    std::vector<double> integrand(grid->size());
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t iz = 0; iz < grid->Nz; ++iz)
      for (std::size_t p = 0; p < plane; ++p) {
        const std::size_t i = plane * iz + p;
        const double w2 = re.v[i] * re.v[i] + im.v[i] * im.v[i];
        integrand[i] = phi.v[p] * phi.v[p] * w2;
      }
    const double space = kernels::sum(integrand) * grid->cell_volume();
    acc += (s == 0 || s == nt - 1) ? 0.5 * h * space : h * space;
  }
  return acc;
}

}  // namespace slab
