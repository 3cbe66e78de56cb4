#include "slab/planar.hpp"

#include <cmath>

#include "slab/errors.hpp"
#include "slab/kernels.hpp"

namespace slab {

PlanarSolver::PlanarSolver(std::shared_ptr<const PlanarGrid> grid, double mu)
    : grid_(std::move(grid)), mu_(mu), ws_(grid_) {}

PlanarState PlanarSolver::project_initial(const VectorField& U0) const {
  const auto& g3 = *U0.grid();
  PlanarVec avg(grid_);
  const std::size_t plane = static_cast<std::size_t>(g3.Nx) * g3.Ny;
  for (int a = 0; a < 2; ++a)
    for (std::size_t p = 0; p < plane; ++p) {
      double s = 0.0;
      for (int iz = 0; iz < g3.Nz; ++iz) s += U0[a].v[plane * iz + p];
      avg[a].v[p] = s / g3.Nz;
    }
  PlanarWorkspace ws(grid_);
  PlanarVec proj = ws.leray(avg);
  PlanarState st;
  st.omega = ws.curl(proj);
  ws.dealias(st.omega);
  st.time = 0.0;
  return st;
}

PlanarState PlanarSolver::from_velocity(const PlanarVec& U) {
  PlanarVec proj = ws_.leray(U);
  PlanarState st;
  st.omega = ws_.curl(proj);
  ws_.dealias(st.omega);
  return st;
}

PlanarField PlanarSolver::streamfunction(const PlanarState& s) {
  return ws_.inverse_laplacian(s.omega);
}

PlanarVec PlanarSolver::velocity(const PlanarState& s) {
  std::vector<Complex> so;
  ws_.forward(s.omega, so);
  const std::vector<double>&kx = ws_.kx(), &ky = ws_.ky(), &k2 = ws_.k2();
  std::vector<Complex> u1(so.size()), u2(so.size());
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t c = 0; c < static_cast<std::ptrdiff_t>(so.size()); ++c) {
    if (k2[c] <= 0.0) {
      u1[c] = u2[c] = Complex(0.0, 0.0);
      continue;
    }
    const Complex psi = so[c] / (-k2[c]);
    u1[c] = Complex(psi.imag() * ky[c], -psi.real() * ky[c]);   // -i ky psi
    u2[c] = Complex(-psi.imag() * kx[c], psi.real() * kx[c]);   //  i kx psi
  }
  PlanarVec out(grid_);
  ws_.inverse(u1, out[0]);
  ws_.inverse(u2, out[1]);
  return out;
}

// spectral advection tendency -F[u . grad omega], dealiased
std::vector<Complex> PlanarSolver::nonlinear(const std::vector<Complex>& what) {
  const std::vector<double>&kx = ws_.kx(), &ky = ws_.ky(), &k2 = ws_.k2();
  const std::size_t nm = ws_.nmodes();
  std::vector<Complex> u1(nm), u2(nm), w1(nm), w2(nm);
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t c = 0; c < static_cast<std::ptrdiff_t>(nm); ++c) {
    const Complex z = what[c];
    if (k2[c] > 0.0) {
      const Complex psi = z / (-k2[c]);
      u1[c] = Complex(psi.imag() * ky[c], -psi.real() * ky[c]);
      u2[c] = Complex(-psi.imag() * kx[c], psi.real() * kx[c]);
    } else {
      u1[c] = u2[c] = Complex(0.0, 0.0);
    }
    w1[c] = Complex(-z.imag() * kx[c], z.real() * kx[c]);
    w2[c] = Complex(-z.imag() * ky[c], z.real() * ky[c]);
  }
  PlanarField pu1(grid_), pu2(grid_), pw1(grid_), pw2(grid_);
  ws_.inverse(u1, pu1);
  ws_.inverse(u2, pu2);
  ws_.inverse(w1, pw1);
  ws_.inverse(w2, pw2);
  PlanarField adv(grid_);
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t i = 0; i < static_cast<std::ptrdiff_t>(adv.v.size());
       ++i)
    adv.v[i] = pu1.v[i] * pw1.v[i] + pu2.v[i] * pw2.v[i];
  std::vector<Complex> out;
  ws_.forward(adv, out);
  const std::vector<double>& mask = ws_.dealias_mask();
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t c = 0; c < static_cast<std::ptrdiff_t>(nm); ++c)
    out[c] *= -mask[c];
  return out;
}

double PlanarSolver::cfl_limit(const PlanarState& s) {
  PlanarVec u = velocity(s);
  const double umax =
      std::max(kernels::max_abs(u[0].v), kernels::max_abs(u[1].v));
  const double h = std::min(grid_->dx, grid_->dy);
  return 0.5 * h / std::max(umax, 1e-30);
}

PlanarState PlanarSolver::step2d(const PlanarState& s, double dt) {
  if (dt == 0.0) throw ConfigError("step2d: dt must be nonzero");
  if (std::abs(dt) > cfl_limit(s))
    throw SolverError("step2d: CFL violation (advection)");
  const std::size_t nm = ws_.nmodes();
  const std::vector<double>& k2 = ws_.k2();

  std::vector<Complex> w;
  ws_.forward(s.omega, w);
  std::vector<double> e_half(nm), e_full(nm);
  for (std::size_t c = 0; c < nm; ++c) {
    e_half[c] = std::exp(-mu_ * k2[c] * 0.5 * dt);
    e_full[c] = std::exp(-mu_ * k2[c] * dt);
  }

  std::vector<Complex> k1 = nonlinear(w);
  std::vector<Complex> stage(nm);
  for (std::size_t c = 0; c < nm; ++c)
    stage[c] = e_half[c] * (w[c] + 0.5 * dt * k1[c]);
  std::vector<Complex> k2v = nonlinear(stage);
  for (std::size_t c = 0; c < nm; ++c)
    stage[c] = e_half[c] * w[c] + 0.5 * dt * k2v[c];
  std::vector<Complex> k3 = nonlinear(stage);
  for (std::size_t c = 0; c < nm; ++c)
    stage[c] = e_full[c] * w[c] + dt * e_half[c] * k3[c];
  std::vector<Complex> k4 = nonlinear(stage);

  PlanarState out;
  out.omega = PlanarField(grid_);
  std::vector<Complex> res(nm);
  for (std::size_t c = 0; c < nm; ++c)
    res[c] = e_full[c] * w[c] +
             dt / 6.0 *
                 (e_full[c] * k1[c] + 2.0 * e_half[c] * (k2v[c] + k3[c]) +
                  k4[c]);
  ws_.inverse(res, out.omega);
  out.time = s.time + dt;
  return out;
}

double PlanarSolver::energy(const PlanarState& s) {
  PlanarVec u = velocity(s);
  const double n0 = l2_norm(u[0]);
  const double n1 = l2_norm(u[1]);
  return 0.5 * (n0 * n0 + n1 * n1);
}

double PlanarSolver::enstrophy(const PlanarState& s) {
  const double n = l2_norm(s.omega);
  return 0.5 * n * n;
}

PlanarRunResult PlanarSolver::run2d(const PlanarState& initial, double T_end,
                                    int n_outputs, const Observer& observer) {
  if (n_outputs < 1) throw ConfigError("run2d: n_outputs must be >= 1");
  PlanarRunResult res;
  PlanarState s = initial;
  auto emit = [&](const PlanarState& st) {
    PlanarDiagRow row{st.time, energy(st), enstrophy(st)};
    res.rows.push_back(row);
    if (observer) observer(st, row);
  };
  emit(s);
  const double seg = T_end / n_outputs;
  for (int out = 0; out < n_outputs; ++out) {
    const double lim = 0.8 * cfl_limit(s);
    const int nsteps = std::max(1, static_cast<int>(std::ceil(seg / lim)));
    const double dt = seg / nsteps;
    for (int k = 0; k < nsteps; ++k) s = step2d(s, dt);
    emit(s);
  }
  res.final_state = std::move(s);
  return res;
}

}  // namespace slab
