#pragma once

#include <stdexcept>
#include <string>

namespace phasespace {

/// Input violates a documented precondition.
class InvalidArgument : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A numerical procedure failed to reach its tolerance (grid cap, quadrature bounds).
class ConvergenceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Gauss-Hermite rule too small to integrate the requested polynomial degree exactly.
class InsufficientNodesError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Covariance matrix violates the uncertainty principle.
class UnphysicalStateError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed or inconsistent experiment configuration.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace phasespace
