#pragma once

#include <stdexcept>
#include <string>

namespace ogelfr {

/// Argument outside the mathematical domain of a function.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Parameter vector violates a model's constraints.
class InvalidParameter : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Dataset is empty, malformed or unusable for the requested operation.
class DataError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An iterative method failed to reach its tolerance.
class ConvergenceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Observed information is not positive definite or is numerically singular.
class SingularInformation : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace ogelfr
