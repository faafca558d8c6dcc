#pragma once

#include <stdexcept>
#include <string>

namespace permqio {

// Each category maps onto one CLI exit code (see harness.hpp).

/// Malformed or invariant-violating instance documents.
class SchemaError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Solver hyperparameters or numerical guards that cannot be satisfied.
class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A population-based solver ran out of replicas or walkers.
class ExtinctionError : public std::runtime_error {
 public:
  ExtinctionError(const std::string& what, std::size_t step)
      : std::runtime_error(what), step_(step) {}
  std::size_t step() const noexcept { return step_; }

 private:
  std::size_t step_;
};

/// Exhaustive enumeration refused because n exceeds the configured cap.
class CapExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A solver reported a cost below the exact minimum: always a bug.
class OracleViolation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace permqio
