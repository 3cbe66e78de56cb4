#include "slab/config.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include "slab/errors.hpp"

namespace slab {

std::string to_string(Regime r) {
  switch (r) {
    case Regime::anisotropic_m1_theorem: return "anisotropic-m1-theorem";
    case Regime::isotropic_m1: return "isotropic-m1";
    case Regime::acoustic_decay: return "acoustic-decay";
    case Regime::single_run: return "single-run";
  }
  return "single-run";
}

Regime regime_from_string(const std::string& s) {
  if (s == "anisotropic-m1-theorem") return Regime::anisotropic_m1_theorem;
  if (s == "isotropic-m1") return Regime::isotropic_m1;
  if (s == "acoustic-decay") return Regime::acoustic_decay;
  if (s == "single-run") return Regime::single_run;
  throw ConfigError("unknown regime: " + s);
}

void ExperimentConfig::validate() const {
  params.validate();
  if (!epsilon_list.empty()) {
    for (double e : epsilon_list)
      if (!(e > 0.0)) throw ConfigError("epsilon_list entries must be > 0");
    for (std::size_t i = 1; i < epsilon_list.size(); ++i)
      if (!(epsilon_list[i] < epsilon_list[i - 1]))
        throw ConfigError("epsilon_list must be strictly decreasing");
  }
  static const std::set<std::string> presets = {"vortex", "balanced-radial",
                                                "unbalanced"};
  if (!presets.count(preset)) throw ConfigError("unknown preset: " + preset);
  if (cadence < 1) throw ConfigError("cadence must be >= 1");
  if (Ns < 8) throw ConfigError("Ns must be >= 8");
  if (workers < 1) throw ConfigError("workers must be >= 1");
  if (!(amplitude >= 0.0)) throw ConfigError("amplitude must be >= 0");
  if ((regime == Regime::anisotropic_m1_theorem ||
       regime == Regime::isotropic_m1 || regime == Regime::acoustic_decay) &&
      epsilon_list.empty())
    throw ConfigError("sweep regimes need a non-empty epsilon_list");
}

namespace {

struct Entry {
  std::string value;
  int line = 0;
};

[[noreturn]] void fail(int line, const std::string& msg) {
  std::ostringstream os;
  os << "config line " << line << ": " << msg;
  throw ConfigError(os.str());
}

double to_real(const Entry& e, const std::string& key) {
  if (e.value == "inf") return std::numeric_limits<double>::infinity();
  try {
    std::size_t pos = 0;
    const double v = std::stod(e.value, &pos);
    if (pos != e.value.size()) throw std::invalid_argument("trailing");
    return v;
  } catch (const std::exception&) {
    fail(e.line, "expected a real for key '" + key + "', got '" + e.value + "'");
  }
}

long long to_int(const Entry& e, const std::string& key) {
  try {
    std::size_t pos = 0;
    const long long v = std::stoll(e.value, &pos);
    if (pos != e.value.size()) throw std::invalid_argument("trailing");
    return v;
  } catch (const std::exception&) {
    fail(e.line, "expected an integer for key '" + key + "', got '" + e.value + "'");
  }
}

std::vector<double> to_real_list(const Entry& e, const std::string& key) {
  std::vector<double> out;
  std::istringstream is(e.value);
  std::string tok;
  while (is >> tok) {
    try {
      out.push_back(std::stod(tok));
    } catch (const std::exception&) {
      fail(e.line, "expected reals for key '" + key + "', got '" + tok + "'");
    }
  }
  return out;
}

std::string trim(const std::string& s) {
  const auto a = s.find_first_not_of(" \t\r");
  if (a == std::string::npos) return "";
  const auto b = s.find_last_not_of(" \t\r");
  return s.substr(a, b - a + 1);
}

}  // namespace

ExperimentConfig parse_config(const std::string& text) {
  static const std::set<std::string> known = {
      "regime",  "epsilon",   "epsilon_list", "m",        "gamma",
      "mu",      "L",         "Nx",           "Ny",       "Nz",
      "dt",      "T_end",     "alpha",        "delta",    "preset",
      "amplitude", "cadence", "seed",         "t_compare", "Ns",
      "workers", "acoustic_T"};

  std::vector<std::pair<std::string, Entry>> entries;
  std::set<std::string> seen;
  std::istringstream is(text);
  std::string line;
  int lineno = 0;
  while (std::getline(is, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) fail(lineno, "expected 'key = value'");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key.empty()) fail(lineno, "empty key");
    if (!known.count(key)) fail(lineno, "unknown key '" + key + "'");
    if (seen.count(key)) fail(lineno, "duplicate key '" + key + "'");
    seen.insert(key);
    entries.emplace_back(key, Entry{value, lineno});
  }

  ExperimentConfig cfg;
  for (const auto& [key, e] : entries) {
    if (key == "regime") cfg.regime = regime_from_string(e.value);
    else if (key == "epsilon") cfg.params.epsilon = to_real(e, key);
    else if (key == "epsilon_list") cfg.epsilon_list = to_real_list(e, key);
    else if (key == "m") cfg.params.m = to_real(e, key);
    else if (key == "gamma") cfg.params.gamma = to_real(e, key);
    else if (key == "mu") cfg.params.mu = to_real(e, key);
    else if (key == "L") cfg.params.L = to_real(e, key);
    else if (key == "Nx") cfg.params.Nx = static_cast<int>(to_int(e, key));
    else if (key == "Ny") cfg.params.Ny = static_cast<int>(to_int(e, key));
    else if (key == "Nz") cfg.params.Nz = static_cast<int>(to_int(e, key));
    else if (key == "dt") cfg.params.dt = to_real(e, key);
    else if (key == "T_end") cfg.params.T_end = to_real(e, key);
    else if (key == "alpha") cfg.params.alpha = to_real(e, key);
    else if (key == "delta") cfg.params.delta = to_real(e, key);
    else if (key == "preset") cfg.preset = e.value;
    else if (key == "amplitude") cfg.amplitude = to_real(e, key);
    else if (key == "cadence") cfg.cadence = static_cast<int>(to_int(e, key));
    else if (key == "seed") cfg.seed = static_cast<std::uint64_t>(to_int(e, key));
    else if (key == "t_compare") cfg.t_compare = to_real(e, key);
    else if (key == "Ns") cfg.Ns = static_cast<int>(to_int(e, key));
    else if (key == "workers") cfg.workers = static_cast<int>(to_int(e, key));
    else if (key == "acoustic_T") cfg.acoustic_T = to_real(e, key);
  }

  static const char* required[] = {"gamma", "m", "mu"};
  for (const char* k : required)
    if (!seen.count(k))
      throw ConfigError(std::string("missing required key '") + k + "'");

  cfg.validate();
  return cfg;
}

ExperimentConfig load_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file: " + path);
  std::ostringstream os;
  os << in.rdbuf();
  return parse_config(os.str());
}

std::string serialize_config(const ExperimentConfig& cfg) {
  std::ostringstream os;
  os.precision(17);
  os << "regime = " << to_string(cfg.regime) << '\n';
  os << "epsilon = " << cfg.params.epsilon << '\n';
  if (!cfg.epsilon_list.empty()) {
    os << "epsilon_list =";
    for (double e : cfg.epsilon_list) os << ' ' << e;
    os << '\n';
  }
  os << "m = " << cfg.params.m << '\n';
  os << "gamma = " << cfg.params.gamma << '\n';
  os << "mu = " << cfg.params.mu << '\n';
  os << "L = " << cfg.params.L << '\n';
  os << "Nx = " << cfg.params.Nx << '\n';
  os << "Ny = " << cfg.params.Ny << '\n';
  os << "Nz = " << cfg.params.Nz << '\n';
  os << "dt = " << cfg.params.dt << '\n';
  os << "T_end = " << cfg.params.T_end << '\n';
  os << "alpha = " << cfg.params.alpha << '\n';
  os << "delta = " << cfg.params.delta << '\n';
  os << "preset = " << cfg.preset << '\n';
  os << "amplitude = " << cfg.amplitude << '\n';
  os << "cadence = " << cfg.cadence << '\n';
  os << "seed = " << cfg.seed << '\n';
  os << "t_compare = " << cfg.t_compare << '\n';
  os << "Ns = " << cfg.Ns << '\n';
  os << "workers = " << cfg.workers << '\n';
  os << "acoustic_T = " << cfg.acoustic_T << '\n';
  return os.str();
}

}  // namespace slab
