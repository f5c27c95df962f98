#pragma once

#include <stdexcept>
#include <string>

namespace qzeta {

/// Input outside the region where the requested series converges.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Input within the pole guard radius of a pole.
class PoleProximityError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Malformed arguments (bad q, bad composition parameters, ...).
class ArgumentError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Request refused because the evaluation cost would explode.
class CostGuardError : public ArgumentError {
 public:
  using ArgumentError::ArgumentError;
};

}  // namespace qzeta
