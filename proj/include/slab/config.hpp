#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "slab/params.hpp"

namespace slab {

enum class Regime {
  anisotropic_m1_theorem,  // multiscale limit proxy (2D NS comparison)
  isotropic_m1,            // stratified limit (radial comparison)
  acoustic_decay,
  single_run,
};

std::string to_string(Regime r);
Regime regime_from_string(const std::string& s);

/// Flat key-value experiment description. Documented keys only; unknown keys
/// are parse errors (fail fast).
struct ExperimentConfig {
  Regime regime = Regime::single_run;
  SimParams params;
  std::vector<double> epsilon_list;  // strictly decreasing, all > 0
  std::string preset = "vortex";
  double amplitude = 0.5;
  int cadence = 8;         // diagnostic outputs per run
  std::uint64_t seed = 42;
  double t_compare = 0.0;  // 0 -> one horizontal eddy turnover
  int Ns = 512;            // radial mesh resolution
  int workers = 1;
  double acoustic_T = 0.0;  // 0 -> capped at the box-wrap time

  void validate() const;  // throws ConfigError
};

/// Parse the INI-like `key = value` document ('#' comments allowed); errors
/// carry line numbers.
ExperimentConfig parse_config(const std::string& text);
ExperimentConfig load_config_file(const std::string& path);
std::string serialize_config(const ExperimentConfig& cfg);

}  // namespace slab
