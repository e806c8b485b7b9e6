#pragma once

#include <stdexcept>
#include <string>

namespace locest {

/// Invalid model or configuration parameters.
class ParameterError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Argument outside the mathematical domain of an operation.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// A density or integrand produced a non-finite value.
class NumericError : public std::runtime_error {
 public:
  NumericError(const std::string& what, double location)
      : std::runtime_error(what + " at x=" + std::to_string(location)), location_(location) {}
  double location() const noexcept { return location_; }

 private:
  double location_;
};

}  // namespace locest
