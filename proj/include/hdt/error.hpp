#pragma once

#include <stdexcept>
#include <string>

namespace hdt {

// Exception hierarchy. The CLI maps each leaf onto an exit code.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Invalid parameters or preconditions (exit code 2).
struct ConfigError : Error {
  using Error::Error;
};

/// Degenerate or inconsistent geometry.
struct GeometryError : Error {
  using Error::Error;
};

/// An iterative method hit its iteration cap (exit code 3).
struct ConvergenceError : Error {
  using Error::Error;
};

/// File-system or parse failures (exit code 4).
struct IoError : Error {
  using Error::Error;
};

}  // namespace hdt
