#pragma once

#include <stdexcept>
#include <string>

namespace fringe {

// invalid scenario / parameter input; CLI exit code 2
struct ConfigError : std::runtime_error {
  explicit ConfigError(const std::string& msg) : std::runtime_error(msg) {}
};

// nonlinear/linear solver breakdown past all retries; CLI exit code 3
struct SolverError : std::runtime_error {
  explicit SolverError(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace fringe
