#pragma once

#include <stdexcept>
#include <string>

namespace slab {

/// Raised for invalid configuration input (bad keys, bad values, bad sizes).
/// The CLI maps this to exit code 2.
class ConfigError : public std::runtime_error {
 public:
  explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

/// Raised when an integration fails (CFL violation, density positivity loss,
/// singular solve). The CLI maps this to exit code 3.
class SolverError : public std::runtime_error {
 public:
  explicit SolverError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace slab
