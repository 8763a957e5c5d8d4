#pragma once

#include <complex>
#include <stdexcept>
#include <string>
#include <vector>

namespace twoctl {

/// Precondition or invariant violation on a mathematical object
/// (zero divisor, invalid coding matrix, improper transfer function, ...).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Raised by rational-function evaluation at (or numerically at) a pole.
class PoleEvaluationError : public DomainError {
 public:
  PoleEvaluationError(const std::string& what, std::complex<double> pole)
      : DomainError(what), pole_(pole) {}
  std::complex<double> pole() const { return pole_; }

 private:
  std::complex<double> pole_;
};

/// The signal-flow system (I - G) is singular over the rational functions.
class StructuralError : public std::runtime_error {
 public:
  StructuralError(const std::string& what, std::vector<std::string> dependent)
      : std::runtime_error(what), dependent_(std::move(dependent)) {}
  const std::vector<std::string>& dependent_equations() const { return dependent_; }

 private:
  std::vector<std::string> dependent_;
};

/// 1 + K P vanishes identically.
class DegenerateLoopError : public DomainError {
 public:
  using DomainError::DomainError;
};

class SimulationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Scenario configuration rejected; `path` is a JSON pointer into the config.
class ConfigError : public std::runtime_error {
 public:
  ConfigError(std::string path, const std::string& message)
      : std::runtime_error(path + ": " + message), path_(std::move(path)) {}
  const std::string& path() const { return path_; }

 private:
  std::string path_;
};

}  // namespace twoctl
