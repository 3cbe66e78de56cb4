#pragma once

#include <optional>
#include <string>
#include <vector>

#include "slab/compressible.hpp"
#include "slab/config.hpp"
#include "slab/field.hpp"

namespace slab {

struct ConvergenceRow {
  double epsilon = 0.0;
  double t_compare = 0.0;
  double error_norm = 0.0;        // L2 on K against the limit trajectory
  double balance_residual = 0.0;  // geostrophic residual at t_compare
  double energy_drift = 0.0;      // max positive relative drift of the total
  bool failed = false;
  std::string error;
};

struct ConvergenceResult {
  std::vector<ConvergenceRow> rows;
};

/// Epsilon-sweep convergence study for the regime in the config. Rows run
/// concurrently up to config.workers; a failed row is recorded and isolated.
/// Per-epsilon compressible diagnostics land in out_dir/eps_<i>/ when
/// out_dir is non-empty.
ConvergenceResult run_convergence(const ExperimentConfig& cfg,
                                  const std::string& out_dir = "");

struct AcousticRow {
  double epsilon = 0.0;
  double m = 0.0;
  double alpha = 0.0;
  double T = 0.0;
  double local_energy = 0.0;
  double global_energy = 0.0;
  double ratio = 0.0;
};

struct AcousticStudy {
  std::vector<AcousticRow> rows;
  double slope = 0.0;               // log local_energy vs log epsilon
  double conservation_drift = 0.0;  // worst pair-propagator energy drift
};

AcousticStudy run_acoustic_study(const ExperimentConfig& cfg);

/// Default comparison time: one horizontal eddy turnover of the preset,
/// 1/(k A) with k the fundamental wavenumber.
double default_t_compare(const ExperimentConfig& cfg);

// CSV output; content written to a temp file then renamed into place.
void write_text_atomic(const std::string& path, const std::string& content);
std::string convergence_csv(const ConvergenceResult& r);
std::string acoustic_csv(const AcousticStudy& s);
std::string diagnostics_csv(const std::vector<DiagnosticsRow>& rows);

/// Least-squares slope of log(y) against log(x).
double loglog_slope(const std::vector<double>& x, const std::vector<double>& y);

}  // namespace slab
