#include "slab/radial.hpp"

#include <lapacke.h>

#include <algorithm>
#include <cmath>

#include "slab/errors.hpp"
#include "slab/kernels.hpp"

namespace slab {

RadialMesh make_radial_mesh(int Ns, double S_max) {
  if (Ns < 8) throw ConfigError("radial mesh needs Ns >= 8");
  if (!(S_max > 0.0)) throw ConfigError("radial mesh needs S_max > 0");
  RadialMesh m;
  m.Ns = Ns;
  m.S_max = S_max;
  m.ds = S_max / Ns;
  m.s.resize(Ns);
  m.sf.resize(Ns + 1);
  for (int j = 0; j < Ns; ++j) m.s[j] = (j + 0.5) * m.ds;
  for (int j = 0; j <= Ns; ++j) m.sf[j] = j * m.ds;
  return m;
}

RadialCoeffs radial_static_coeffs(const RadialMesh& mesh,
                                  const PressureLaw& law, double eps_static,
                                  double L) {
  RadialCoeffs c;
  c.rho.resize(mesh.Ns);
  c.Pp.resize(mesh.Ns);
  c.rho_face.resize(mesh.Ns + 1);
  for (int j = 0; j < mesh.Ns; ++j) {
    c.rho[j] = law.potential_inverse(eps_static * centrifugal_G(mesh.s[j], L));
    c.Pp[j] = law.Pp(c.rho[j]);
  }
  for (int j = 0; j <= mesh.Ns; ++j)
    c.rho_face[j] =
        law.potential_inverse(eps_static * centrifugal_G(mesh.sf[j], L));
  return c;
}

RadialOperators::RadialOperators(RadialMesh mesh, RadialCoeffs coeffs,
                                 double mu)
    : mesh_(std::move(mesh)), coeffs_(std::move(coeffs)), mu_(mu) {}

std::vector<double> RadialOperators::face_grad_R(
    const std::vector<double>& r) const {
  const int n = mesh_.Ns;
  std::vector<double> g(n + 1, 0.0);
  for (int f = 1; f < n; ++f)
    g[f] = (coeffs_.Pp[f] * r[f] - coeffs_.Pp[f - 1] * r[f - 1]) / mesh_.ds;
  // Dirichlet R(S_max) = 0 via mirror ghost
  g[n] = -2.0 * coeffs_.Pp[n - 1] * r[n - 1] / mesh_.ds;
  return g;
}

namespace {

// (1/s) d_s(s w q) in flux form for face values q (q[0] ignored, s_f[0]=0)
std::vector<double> flux_div(const RadialMesh& m, const std::vector<double>& w,
                             const std::vector<double>& q) {
  const int n = m.Ns;
  std::vector<double> out(n);
  for (int j = 0; j < n; ++j) {
    const double hi = m.sf[j + 1] * w[j + 1] * q[j + 1];
    const double lo = m.sf[j] * w[j] * q[j];
    out[j] = (hi - lo) / (m.s[j] * m.ds);
  }
  return out;
}

// face gradient of a cell field with Dirichlet 0 at the outer face
std::vector<double> face_grad(const RadialMesh& m,
                              const std::vector<double>& v) {
  const int n = m.Ns;
  std::vector<double> g(n + 1, 0.0);
  for (int f = 1; f < n; ++f) g[f] = (v[f] - v[f - 1]) / m.ds;
  g[n] = -2.0 * v[n - 1] / m.ds;
  return g;
}

}  // namespace

std::vector<double> RadialOperators::apply_L(
    const std::vector<double>& r) const {
  std::vector<double> R(mesh_.Ns);
  for (int j = 0; j < mesh_.Ns; ++j) R[j] = coeffs_.Pp[j] * r[j];
  return flux_div(mesh_, coeffs_.rho_face, face_grad(mesh_, R));
}

std::vector<double> RadialOperators::apply_A(
    const std::vector<double>& r) const {
  std::vector<double> out = apply_L(r);
  for (int j = 0; j < mesh_.Ns; ++j) out[j] = r[j] - out[j];
  return out;
}

std::vector<double> RadialOperators::apply_Bp(
    const std::vector<double>& r) const {
  std::vector<double> R(mesh_.Ns);
  for (int j = 0; j < mesh_.Ns; ++j) R[j] = coeffs_.Pp[j] * r[j];
  std::vector<double> ones(mesh_.Ns + 1, 1.0);
  std::vector<double> lap = flux_div(mesh_, ones, face_grad(mesh_, R));
  return flux_div(mesh_, ones, face_grad(mesh_, lap));
}

double RadialOperators::weighted_inner(const std::vector<double>& f,
                                       const std::vector<double>& g) const {
  double acc = 0.0;
  for (int j = 0; j < mesh_.Ns; ++j)
    acc += f[j] * g[j] * coeffs_.Pp[j] * mesh_.s[j] * mesh_.ds;
  return acc;
}

double RadialOperators::energy(const RadialField& f) const {
  double acc = 0.0;
  for (int j = 0; j < mesh_.Ns; ++j)
    acc += 0.5 * f.r[j] * coeffs_.Pp[j] * f.r[j] * mesh_.s[j] * mesh_.ds;
  const std::vector<double> g = face_grad_R(f.r);
  for (int fc = 1; fc <= mesh_.Ns; ++fc)
    acc += 0.5 * coeffs_.rho_face[fc] * g[fc] * g[fc] * mesh_.sf[fc] * mesh_.ds;
  return acc;
}

// LAPACK general band storage (column-major): entry (i,j) of the operator
// c_B * Bp + A goes to ab[kl + ku + i - j + j*ldab].
void RadialOperators::assemble_banded(double c, std::vector<double>& ab,
                                      int kl, int ku) const {
  const int n = mesh_.Ns;
  const int ldab = 2 * kl + ku + 1;
  ab.assign(static_cast<std::size_t>(ldab) * n, 0.0);
  std::vector<double> e(n, 0.0), col;
  for (int j = 0; j < n; ++j) {
    e[j] = 1.0;
    col = apply_A(e);
    if (c != 0.0) {
      const std::vector<double> b = apply_Bp(e);
      for (int i = 0; i < n; ++i) col[i] += c * b[i];
    }
    e[j] = 0.0;
    for (int i = std::max(0, j - ku); i <= std::min(n - 1, j + kl); ++i)
      ab[static_cast<std::size_t>(kl + ku + i - j) +
         static_cast<std::size_t>(j) * ldab] = col[i];
  }
}

RadialField RadialOperators::solve_A(const std::vector<double>& rhs) const {
  const int n = mesh_.Ns;
  const int kl = 1, ku = 1, ldab = 2 * kl + ku + 1;
  std::vector<double> ab;
  assemble_banded(0.0, ab, kl, ku);
  std::vector<int> piv(n);
  RadialField out;
  out.r = rhs;
  const int info = LAPACKE_dgbsv(LAPACK_COL_MAJOR, n, kl, ku, 1, ab.data(),
                                 ldab, piv.data(), out.r.data(), n);
  if (info != 0) throw SolverError("radial init solve failed (dgbsv)");
  return out;
}

RadialField RadialOperators::step(const RadialField& f, double dt) {
  if (!(dt > 0.0)) throw ConfigError("step_radial: dt must be > 0");
  const int n = mesh_.Ns;
  const int kl = 2, ku = 2, ldab = 2 * kl + ku + 1;
  if (dt != cached_dt_) {
    assemble_banded(0.5 * mu_ * dt, lu_, kl, ku);
    piv_.assign(n, 0);
    const int info = LAPACKE_dgbtrf(LAPACK_COL_MAJOR, n, n, kl, ku, lu_.data(),
                                    ldab, piv_.data());
    if (info != 0) throw SolverError("radial CN factorization failed (dgbtrf)");
    cached_dt_ = dt;
  }
  // rhs = (A - c Bp) r
  RadialField out;
  out.r = apply_A(f.r);
  const std::vector<double> b = apply_Bp(f.r);
  for (int j = 0; j < n; ++j) out.r[j] -= 0.5 * mu_ * dt * b[j];
  const int info =
      LAPACKE_dgbtrs(LAPACK_COL_MAJOR, 'N', n, kl, ku, 1, lu_.data(), ldab,
                     piv_.data(), out.r.data(), n);
  if (info != 0) throw SolverError("radial CN solve failed (dgbtrs)");
  return out;
}

std::vector<double> RadialOperators::R_of(const RadialField& f) const {
  std::vector<double> R(mesh_.Ns);
  for (int j = 0; j < mesh_.Ns; ++j) R[j] = coeffs_.Pp[j] * f.r[j];
  return R;
}

std::vector<double> circle_average(const PlanarField& f,
                                   const RadialMesh& mesh) {
  const auto& g = *f.grid;
  std::vector<double> out(mesh.Ns, 0.0);
  for (int j = 0; j < mesh.Ns; ++j) {
    const double s = mesh.s[j];
    const int ntheta =
        std::max(32, static_cast<int>(std::ceil(4.0 * M_PI * s / g.dx)));
    double acc = 0.0;
    for (int t = 0; t < ntheta; ++t) {
      const double th = 2.0 * M_PI * (t + 0.5) / ntheta;
      const double xs = s * std::cos(th);
      const double ys = s * std::sin(th);
      // bilinear on the periodic grid
      const double fx = (xs + g.L) / g.dx;
      const double fy = (ys + g.L) / g.dy;
      const int i0 = static_cast<int>(std::floor(fx));
      const int j0 = static_cast<int>(std::floor(fy));
      const double ax = fx - i0;
      const double ay = fy - j0;
      const int i1 = (i0 + 1) % g.Nx, iw = ((i0 % g.Nx) + g.Nx) % g.Nx;
      const int j1 = (j0 + 1) % g.Ny, jw = ((j0 % g.Ny) + g.Ny) % g.Ny;
      acc += (1 - ax) * (1 - ay) * f.at(iw, jw) + ax * (1 - ay) * f.at(i1, jw) +
             (1 - ax) * ay * f.at(iw, j1) + ax * ay * f.at(i1, j1);
    }
    out[j] = acc / ntheta;
  }
  return out;
}

RadialField init_from_circle_average(const std::vector<double>& a,
                                     const RadialOperators& ops) {
  if (static_cast<int>(a.size()) != ops.mesh().Ns)
    throw ConfigError("init_from_circle_average: size mismatch");
  return ops.solve_A(a);
}

RadialField init_from_data(const PlanarField& r0_avg, const PlanarVec& U0h_avg,
                           const StaticProfile& profile,
                           const RadialOperators& ops, PlanarWorkspace& pws) {
  PlanarVec w(r0_avg.grid);
  kernels::mul(profile.rho_h.v, U0h_avg[0].v, w[0].v);
  kernels::mul(profile.rho_h.v, U0h_avg[1].v, w[1].v);
  PlanarField curl = pws.curl(w);
  PlanarField rhs(r0_avg.grid);
  kernels::lincomb(1.0, r0_avg.v, -1.0, curl.v, rhs.v);
  return init_from_circle_average(circle_average(rhs, ops.mesh()), ops);
}

namespace {

// natural cubic spline on a uniform grid; hand-rolled Thomas solve
struct Spline {
  double t0 = 0.0, h = 1.0;
  std::vector<double> y, m;  // values and second derivatives

  void build(double first, double spacing, std::vector<double> values) {
    t0 = first;
    h = spacing;
    y = std::move(values);
    const int n = static_cast<int>(y.size());
    m.assign(n, 0.0);
    if (n < 3) return;
    std::vector<double> a(n - 2, 1.0), b(n - 2, 4.0), c(n - 2, 1.0),
        d(n - 2, 0.0);
    for (int i = 1; i < n - 1; ++i)
      d[i - 1] = 6.0 * (y[i - 1] - 2.0 * y[i] + y[i + 1]) / (h * h);
    for (int i = 1; i < n - 2; ++i) {
      const double w = a[i] / b[i - 1];
      b[i] -= w * c[i - 1];
      d[i] -= w * d[i - 1];
    }
    m[n - 2] = d[n - 3] / b[n - 3];
    for (int i = n - 4; i >= 0; --i)
      m[i + 1] = (d[i] - c[i] * m[i + 2]) / b[i];
  }

  double eval(double t) const {
    const int n = static_cast<int>(y.size());
    double u = (t - t0) / h;
    int i = static_cast<int>(std::floor(u));
    i = std::clamp(i, 0, n - 2);
    const double x = u - i;
    const double mi = m[i], mj = m[i + 1];
    return (1.0 - x) * y[i] + x * y[i + 1] +
           h * h / 6.0 *
               ((1.0 - x) * ((1.0 - x) * (1.0 - x) - 1.0) * mi +
                x * (x * x - 1.0) * mj);
  }
};

}  // namespace

PlanarField sample_radial(const std::vector<double>& center_values,
                          const RadialMesh& mesh,
                          std::shared_ptr<const PlanarGrid> grid) {
  const int n = mesh.Ns;
  // even reflection through s = 0 makes the origin an interior point
  std::vector<double> refl(2 * n);
  for (int j = 0; j < n; ++j) {
    refl[n + j] = center_values[j];
    refl[n - 1 - j] = center_values[j];
  }
  Spline sp;
  sp.build(-mesh.S_max + 0.5 * mesh.ds, mesh.ds, std::move(refl));

  // profiles are expected to have decayed by S_max; the hard zero outside
  // introduces only a kink of the boundary magnitude
  PlanarField out(grid);
  const double s_last = mesh.s[n - 1];
  for (int j = 0; j < grid->Ny; ++j)
    for (int i = 0; i < grid->Nx; ++i) {
      const double s = std::hypot(grid->x[i], grid->y[j]);
      out.at(i, j) = (s >= mesh.S_max) ? 0.0 : sp.eval(std::min(s, s_last));
    }
  return out;
}

RadialReconstruction reconstruct_velocity(const RadialField& f,
                                          const RadialOperators& ops,
                                          std::shared_ptr<const PlanarGrid> grid,
                                          PlanarWorkspace& pws) {
  RadialReconstruction rec;
  rec.R = sample_radial(ops.R_of(f), ops.mesh(), grid);
  PlanarVec g = pws.grad(rec.R);
  rec.U = PlanarVec(grid);
  // (a,b)^perp = (-b,a):  U = (-d2 R, d1 R)
  kernels::lincomb(-1.0, g[1].v, 0.0, g[1].v, rec.U[0].v);
  kernels::copy(g[0].v, rec.U[1].v);
  return rec;
}

RadialTrajectory run_radial(RadialOperators& ops, const RadialField& initial,
                            double dt, double T_end, int cadence) {
  if (cadence < 1) throw ConfigError("run_radial: cadence must be >= 1");
  RadialTrajectory tr;
  RadialField s = initial;
  double t = 0.0;
  tr.times.push_back(t);
  tr.states.push_back(s);
  tr.energies.push_back(ops.energy(s));
  const int nsteps = std::max(1, static_cast<int>(std::llround(T_end / dt)));
  for (int k = 1; k <= nsteps; ++k) {
    s = ops.step(s, dt);
    t = dt * k;
    if (k % cadence == 0 || k == nsteps) {
      tr.times.push_back(t);
      tr.states.push_back(s);
      tr.energies.push_back(ops.energy(s));
    }
  }
  return tr;
}

}  // namespace slab
