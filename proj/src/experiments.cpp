#include "slab/experiments.hpp"

#include <atomic>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <limits>
#include <sstream>
#include <thread>

#include "slab/acoustic.hpp"
#include "slab/errors.hpp"
#include "slab/kernels.hpp"
#include "slab/planar.hpp"
#include "slab/presets.hpp"
#include "slab/radial.hpp"
#include "slab/rng.hpp"

namespace slab {

double default_t_compare(const ExperimentConfig& cfg) {
  if (cfg.t_compare > 0.0) return cfg.t_compare;
  const double k = M_PI / cfg.params.L;
  const double amp = std::max(cfg.amplitude, 1e-6);
  return 1.0 / (k * amp);
}

void write_text_atomic(const std::string& path, const std::string& content) {
  namespace fs = std::filesystem;
  const fs::path target(path);
  if (target.has_parent_path()) fs::create_directories(target.parent_path());
  const fs::path tmp = target.string() + ".tmp";
  {
    std::ofstream out(tmp);
    if (!out) throw ConfigError("cannot open for writing: " + tmp.string());
    out << content;
  }
  fs::rename(tmp, target);
}

namespace {

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

// one full compressible run compared against its limit trajectory
ConvergenceRow convergence_row(const ExperimentConfig& cfg, double eps,
                               const std::string& diag_dir) {
  ConvergenceRow row;
  row.epsilon = eps;
  row.t_compare = default_t_compare(cfg);
  try {
    SimParams p = cfg.params;
    p.epsilon = eps;
    auto grid = make_grid(p);
    SpectralWorkspace ws(grid);
    const Potential G = make_centrifugal_potential(grid->horizontal);
    StaticProfile profile = solve_static(p, G, grid, ws);
    CompressibleSolver solver(grid, profile, p);
    const FluidState initial =
        make_preset(cfg.preset, cfg.amplitude, solver.profile(), p, grid);

    RunResult rr = solver.run(initial, row.t_compare, cfg.cadence);
    if (!diag_dir.empty())
      write_text_atomic(diag_dir + "/diagnostics.csv",
                        diagnostics_csv(rr.rows));

    const double e0 = rr.rows.front().energy.total();
    double drift = 0.0;
    for (const auto& r : rr.rows)
      drift = std::max(drift, (r.energy.total() - e0) / std::max(e0, 1e-300));
    row.energy_drift = drift;
    row.balance_residual =
        solver.diagnostics_geostrophic(rr.final_state).geo_residual;

    const double K = 0.8 * p.L;
    if (cfg.regime == Regime::isotropic_m1) {
      // radial limit: same static law on the radial mesh
      const RadialMesh mesh = make_radial_mesh(cfg.Ns, K);
      const RadialCoeffs coeffs = radial_static_coeffs(
          mesh, profile.law, p.static_exponent(), p.L);
      RadialOperators ops(mesh, coeffs, p.mu);
      PlanarWorkspace pws(grid->horizontal);

      // vertical averages of the initial data feed the INIT reconstruction
      PlanarField r0 = solver.r_epsilon_avg(initial);
      PlanarVec U0 = solver.velocity_avg(initial);
      RadialField limit0 = init_from_data(r0, U0, solver.profile(), ops, pws);

      const double dt_r = row.t_compare / 256.0;
      RadialTrajectory tr =
          run_radial(ops, limit0, dt_r, row.t_compare, 1 << 30);
      const PlanarField r_lim =
          sample_radial(tr.states.back().r, mesh, grid->horizontal);
      PlanarField r_eps = solver.r_epsilon_avg(rr.final_state);
      PlanarField diff(grid->horizontal);
      kernels::lincomb(1.0, r_eps.v, -1.0, r_lim.v, diff.v);
      pws.dealias(diff);  // compare within the resolved band of both solvers
      row.error_norm = l2_region(diff, K);
    } else {
      // 2D incompressible limit
      PlanarSolver limit(grid->horizontal, p.mu);
      VectorField u0(grid);
      for (int c = 0; c < 3; ++c)
        kernels::divide(initial.mom[c].v, initial.rho.v, u0[c].v);
      PlanarState s0 = limit.project_initial(u0);
      PlanarRunResult lr = limit.run2d(s0, row.t_compare, 1);
      PlanarVec Uh = limit.velocity(lr.final_state);
      PlanarVec ueps = solver.velocity_avg(rr.final_state);
      PlanarWorkspace pws2(grid->horizontal);
      PlanarVec diff(grid->horizontal);
      kernels::lincomb(1.0, ueps[0].v, -1.0, Uh[0].v, diff[0].v);
      kernels::lincomb(1.0, ueps[1].v, -1.0, Uh[1].v, diff[1].v);
      pws2.dealias(diff[0]);  // the 2D state lives in the dealiased band
      pws2.dealias(diff[1]);
      row.error_norm = l2_region(diff, K);
    }
  } catch (const std::exception& e) {
    row.failed = true;
    row.error = e.what();
    row.error_norm = std::numeric_limits<double>::quiet_NaN();
  }
  return row;
}

}  // namespace

ConvergenceResult run_convergence(const ExperimentConfig& cfg,
                                  const std::string& out_dir) {
  cfg.validate();
  if (cfg.epsilon_list.empty())
    throw ConfigError("run_convergence needs epsilon_list");
  ConvergenceResult res;
  res.rows.resize(cfg.epsilon_list.size());

  std::atomic<std::size_t> next{0};
  auto worker = [&]() {
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= cfg.epsilon_list.size()) return;
      std::string dir;
      if (!out_dir.empty()) {
        dir = out_dir + "/eps_" + std::to_string(i);
        std::filesystem::create_directories(dir);
      }
      res.rows[i] = convergence_row(cfg, cfg.epsilon_list[i], dir);
    }
  };
  const int nw = std::min<int>(cfg.workers,
                               static_cast<int>(cfg.epsilon_list.size()));
  if (nw <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (int t = 0; t < nw; ++t) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }
  return res;
}

AcousticStudy run_acoustic_study(const ExperimentConfig& cfg) {
  cfg.validate();
  if (cfg.epsilon_list.empty())
    throw ConfigError("run_acoustic_study needs epsilon_list");
  AcousticStudy study;
  Rng rng(cfg.seed);

  std::vector<double> eps_ok, le_ok;
  for (std::size_t i = 0; i < cfg.epsilon_list.size(); ++i) {
    SimParams p = cfg.params;
    p.epsilon = cfg.epsilon_list[i];
    auto grid = make_grid(p);
    SpectralWorkspace ws(grid);

    const ScalarField v = random_band_limited(
        grid, ws, rng.stream("acoustic"), 0.5, Parity::even);

    const double epsm = std::pow(p.epsilon, p.m);
    const double wrap_T = 0.8 * p.L * epsm;  // half-wave speed is 1/eps^m
    const double T = cfg.acoustic_T > 0.0 ? std::min(cfg.acoustic_T, wrap_T)
                                          : wrap_T;

    AcousticRow row;
    row.epsilon = p.epsilon;
    row.m = p.m;
    row.alpha = p.alpha;
    row.T = T;
    row.local_energy = local_energy(v, p.L / 2.0, T, p, ws, 65);
    const double n = l2_norm(v);
    row.global_energy = n * n;
    row.ratio = row.local_energy / std::max(row.global_energy, 1e-300);
    study.rows.push_back(row);
    eps_ok.push_back(p.epsilon);
    le_ok.push_back(row.local_energy);

    // pair-propagator conservation over the same horizon
    ScalarField Psi0(grid, Parity::even);
    const double e0 = acoustic_energy(v, Psi0, p, ws);
    auto [S1, Psi1] = wave_propagate(v, Psi0, T, p, ws);
    const double e1 = acoustic_energy(S1, Psi1, p, ws);
    study.conservation_drift = std::max(
        study.conservation_drift, std::abs(e1 - e0) / std::max(e0, 1e-300));
  }
  study.slope = loglog_slope(eps_ok, le_ok);
  return study;
}

double loglog_slope(const std::vector<double>& x,
                    const std::vector<double>& y) {
  if (x.size() != y.size() || x.size() < 2)
    throw ConfigError("loglog_slope needs >= 2 points");
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  const double n = static_cast<double>(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double lx = std::log(x[i]);
    const double ly = std::log(y[i]);
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
  }
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

std::string convergence_csv(const ConvergenceResult& r) {
  std::ostringstream os;
  os << "epsilon,t_compare,error_norm,balance_residual,energy_drift\n";
  for (const auto& row : r.rows) {
    if (row.failed) {
      os << fmt(row.epsilon) << ',' << fmt(row.t_compare)
         << ",failed,failed,failed\n";
    } else {
      os << fmt(row.epsilon) << ',' << fmt(row.t_compare) << ','
         << fmt(row.error_norm) << ',' << fmt(row.balance_residual) << ','
         << fmt(row.energy_drift) << '\n';
    }
  }
  return os.str();
}

std::string acoustic_csv(const AcousticStudy& s) {
  std::ostringstream os;
  os << "epsilon,m,alpha,T,local_energy,global_energy,ratio\n";
  for (const auto& r : s.rows)
    os << fmt(r.epsilon) << ',' << fmt(r.m) << ',' << fmt(r.alpha) << ','
       << fmt(r.T) << ',' << fmt(r.local_energy) << ',' << fmt(r.global_energy)
       << ',' << fmt(r.ratio) << '\n';
  return os.str();
}

std::string diagnostics_csv(const std::vector<DiagnosticsRow>& rows) {
  std::ostringstream os;
  os << "time,kinetic,entropy,dissipation,total,mass_defect,geo_residual,"
        "div_residual\n";
  for (const auto& r : rows)
    os << fmt(r.time) << ',' << fmt(r.energy.kinetic) << ','
       << fmt(r.energy.entropy) << ',' << fmt(r.energy.cumulative_dissipation)
       << ',' << fmt(r.energy.total()) << ',' << fmt(r.mass_defect) << ','
       << fmt(r.geo.geo_residual) << ',' << fmt(r.geo.div_residual) << '\n';
  return os.str();
}

}  // namespace slab
