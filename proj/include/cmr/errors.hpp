#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace cmr {

/// Malformed arguments: index out of range, dimension or mode mismatch.
class ArgumentError : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

/// Evaluation outside the admissible domain of the potential.
class DomainError : public std::domain_error {
public:
  using std::domain_error::domain_error;
};

/// Coinciding single-particle values make a gauge matrix singular.
class DegeneracyError : public std::domain_error {
public:
  using std::domain_error::domain_error;
};

/// A check that needs a′ was requested for the rational case.
class UnsupportedCaseError : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

/// Matrix inversion hit a (numerically) singular pivot.
class SingularMatrixError : public std::domain_error {
public:
  using std::domain_error::domain_error;
};

/// The time integrator left the admissible domain.
class EvolutionError : public std::runtime_error {
public:
  EvolutionError(const std::string& what, std::size_t last_valid_step)
      : std::runtime_error(what), last_valid_step_(last_valid_step) {}
  std::size_t last_valid_step() const { return last_valid_step_; }

private:
  std::size_t last_valid_step_;
};

}  // namespace cmr
