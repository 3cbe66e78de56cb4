// slabflow: experiment driver for the rotating compressible slab suite.
//
// Subcommands: static-profile, run-full, run-2d, run-radial, acoustic,
// converge. Each takes --config <path>, --out <dir>, and optional --seed,
// --workers overrides. Exit codes: 0 success, 2 configuration error,
// 3 solver failure.

#include <CLI11.hpp>

#include <cstdio>
#include <filesystem>
#include <iostream>
#include <sstream>

#include "slab/acoustic.hpp"
#include "slab/compressible.hpp"
#include "slab/config.hpp"
#include "slab/errors.hpp"
#include "slab/experiments.hpp"
#include "slab/kernels.hpp"
#include "slab/planar.hpp"
#include "slab/presets.hpp"
#include "slab/radial.hpp"

namespace fs = std::filesystem;
using namespace slab;

namespace {

struct CommonArgs {
  std::string config_path;
  std::string out_dir;
  std::uint64_t seed = 0;
  bool seed_set = false;
  int workers = 0;
};

void add_common(CLI::App* cmd, CommonArgs& args) {
  cmd->add_option("--config", args.config_path, "config file path")
      ->required();
  cmd->add_option("--out", args.out_dir, "output directory")->required();
  cmd->add_option("--seed", args.seed, "override the config seed")
      ->each([&args](const std::string&) { args.seed_set = true; });
  cmd->add_option("--workers", args.workers, "override worker count");
}

ExperimentConfig load(const CommonArgs& args) {
  ExperimentConfig cfg = load_config_file(args.config_path);
  if (args.seed_set) cfg.seed = args.seed;
  if (args.workers > 0) cfg.workers = args.workers;
  fs::create_directories(args.out_dir);
  return cfg;
}

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

int cmd_static_profile(const CommonArgs& args) {
  ExperimentConfig cfg = load(args);
  auto grid = make_grid(cfg.params);
  SpectralWorkspace ws(grid);
  const Potential G = make_centrifugal_potential(grid->horizontal);
  StaticProfile profile = solve_static(cfg.params, G, grid, ws);
  write_field(args.out_dir + "/rho_tilde.slabf", profile.rho);
  write_field(args.out_dir + "/pp_tilde.slabf", profile.Pp);
  write_field_csv(args.out_dir + "/rho_tilde.csv", profile.rho);

  // discrete momentum residual of the static state
  CompressibleSolver solver(grid, profile, cfg.params);
  FluidState st(grid);
  st.rho = profile.rho;
  RhsBundle rhs = solver.eval_rhs(st);
  double resid = 0.0, scale = 0.0;
  for (int c = 0; c < 3; ++c) {
    resid = std::max(resid, max_abs(rhs.dmom[c]));
    scale = std::max(scale, max_abs(rhs.centrifugal[c]));
  }
  std::cout << "static profile written; momentum residual (rel) = "
            << resid / std::max(scale, 1e-300) << "\n";
  return 0;
}

int cmd_run_full(const CommonArgs& args) {
  ExperimentConfig cfg = load(args);
  auto grid = make_grid(cfg.params);
  SpectralWorkspace ws(grid);
  const Potential G = make_centrifugal_potential(grid->horizontal);
  StaticProfile profile = solve_static(cfg.params, G, grid, ws);
  CompressibleSolver solver(grid, profile, cfg.params);
  FluidState initial =
      make_preset(cfg.preset, cfg.amplitude, solver.profile(), cfg.params, grid);

  int snap = 0;
  auto observer = [&](const FluidState& s, const DiagnosticsRow&) {
    char name[64];
    std::snprintf(name, sizeof(name), "/rho_%04d.slabf", snap);
    write_field(args.out_dir + name, s.rho);
    for (int c = 0; c < 3; ++c) {
      std::snprintf(name, sizeof(name), "/mom%d_%04d.slabf", c + 1, snap);
      write_field(args.out_dir + name, s.mom[c]);
    }
    ++snap;
  };
  RunResult rr = solver.run(initial, cfg.params.T_end, cfg.cadence, observer);
  write_text_atomic(args.out_dir + "/diagnostics.csv",
                    diagnostics_csv(rr.rows));
  std::cout << "run-full: " << rr.rows.size() << " outputs, final t="
            << rr.rows.back().time << "\n";
  return 0;
}

int cmd_run_2d(const CommonArgs& args) {
  ExperimentConfig cfg = load(args);
  auto grid = make_grid(cfg.params);
  SpectralWorkspace ws(grid);
  const Potential G = make_centrifugal_potential(grid->horizontal);
  StaticProfile profile = solve_static(cfg.params, G, grid, ws);
  FluidState initial =
      make_preset(cfg.preset, cfg.amplitude, profile, cfg.params, grid);
  VectorField u0(grid);
  for (int c = 0; c < 3; ++c)
    kernels::divide(initial.mom[c].v, initial.rho.v, u0[c].v);

  PlanarSolver solver(grid->horizontal, cfg.params.mu);
  PlanarState s0 = solver.project_initial(u0);
  int snap = 0;
  std::ostringstream diag;
  diag << "time,energy,enstrophy\n";
  auto observer = [&](const PlanarState& s, const PlanarDiagRow& row) {
    char name[64];
    std::snprintf(name, sizeof(name), "/omega_%04d.slabf", snap++);
    write_field(args.out_dir + name, s.omega);
    diag << num(row.time) << ',' << num(row.energy) << ','
         << num(row.enstrophy) << '\n';
  };
  solver.run2d(s0, cfg.params.T_end, cfg.cadence, observer);
  write_text_atomic(args.out_dir + "/diag2d.csv", diag.str());
  std::cout << "run-2d complete\n";
  return 0;
}

int cmd_run_radial(const CommonArgs& args) {
  ExperimentConfig cfg = load(args);
  auto grid = make_grid(cfg.params);
  SpectralWorkspace ws(grid);
  const Potential G = make_centrifugal_potential(grid->horizontal);
  StaticProfile profile = solve_static(cfg.params, G, grid, ws);
  CompressibleSolver probe(grid, profile, cfg.params);
  FluidState initial =
      make_preset(cfg.preset, cfg.amplitude, probe.profile(), cfg.params, grid);

  const RadialMesh mesh = make_radial_mesh(cfg.Ns, 0.8 * cfg.params.L);
  const RadialCoeffs coeffs = radial_static_coeffs(
      mesh, profile.law, cfg.params.static_exponent(), cfg.params.L);
  RadialOperators ops(mesh, coeffs, cfg.params.mu);
  PlanarWorkspace pws(grid->horizontal);
  RadialField r0 = init_from_data(probe.r_epsilon_avg(initial),
                                  probe.velocity_avg(initial), profile, ops,
                                  pws);

  const double dt = cfg.params.dt > 0.0 ? cfg.params.dt
                                        : cfg.params.T_end / 512.0;
  const int every = std::max(
      1, static_cast<int>(cfg.params.T_end / dt) / std::max(1, cfg.cadence));
  RadialTrajectory tr = run_radial(ops, r0, dt, cfg.params.T_end, every);

  std::ostringstream os;
  os << "time";
  for (int j = 0; j < mesh.Ns; ++j) os << ",r" << j;
  for (int j = 0; j < mesh.Ns; ++j) os << ",R" << j;
  os << ",energy\n";
  for (std::size_t i = 0; i < tr.times.size(); ++i) {
    os << num(tr.times[i]);
    const std::vector<double> R = ops.R_of(tr.states[i]);
    for (double v : tr.states[i].r) os << ',' << num(v);
    for (double v : R) os << ',' << num(v);
    os << ',' << num(tr.energies[i]) << '\n';
  }
  write_text_atomic(args.out_dir + "/radial.csv", os.str());
  std::cout << "run-radial: " << tr.times.size() << " outputs\n";
  return 0;
}

int cmd_acoustic(const CommonArgs& args) {
  ExperimentConfig cfg = load(args);
  AcousticStudy study = run_acoustic_study(cfg);
  write_text_atomic(args.out_dir + "/acoustic_decay.csv", acoustic_csv(study));
  std::ostringstream os;
  os << "m,slope,conservation_drift\n"
     << num(cfg.params.m) << ',' << num(study.slope) << ','
     << num(study.conservation_drift) << '\n';
  write_text_atomic(args.out_dir + "/acoustic_fit.csv", os.str());
  std::cout << "acoustic: slope=" << study.slope << "\n";
  return 0;
}

int cmd_converge(const CommonArgs& args) {
  ExperimentConfig cfg = load(args);
  ConvergenceResult res = run_convergence(cfg, args.out_dir);
  write_text_atomic(args.out_dir + "/convergence.csv", convergence_csv(res));
  for (const auto& row : res.rows)
    if (row.failed)
      std::cerr << "eps=" << row.epsilon << " failed: " << row.error << "\n";
  std::cout << "converge: " << res.rows.size() << " rows\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"rotating compressible slab experiment driver"};
  app.require_subcommand(1);

  CommonArgs args;
  int (*handler)(const CommonArgs&) = nullptr;

  auto* sp = app.add_subcommand("static-profile", "write the static profile");
  add_common(sp, args);
  sp->callback([&handler]() { handler = cmd_static_profile; });
  auto* rf = app.add_subcommand("run-full", "integrate the primitive system");
  add_common(rf, args);
  rf->callback([&handler]() { handler = cmd_run_full; });
  auto* r2 = app.add_subcommand("run-2d", "integrate the 2D limit system");
  add_common(r2, args);
  r2->callback([&handler]() { handler = cmd_run_2d; });
  auto* rr = app.add_subcommand("run-radial", "integrate the radial limit");
  add_common(rr, args);
  rr->callback([&handler]() { handler = cmd_run_radial; });
  auto* ac = app.add_subcommand("acoustic", "acoustic decay study");
  add_common(ac, args);
  ac->callback([&handler]() { handler = cmd_acoustic; });
  auto* cv = app.add_subcommand("converge", "epsilon-sweep convergence study");
  add_common(cv, args);
  cv->callback([&handler]() { handler = cmd_converge; });

  try {
    app.parse(argc, argv);
    return handler ? handler(args) : 2;
  } catch (const CLI::ParseError& e) {
    return app.exit(e) ? 2 : 0;
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const SolverError& e) {
    std::cerr << "solver failure: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
}
