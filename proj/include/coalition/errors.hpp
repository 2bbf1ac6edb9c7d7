#pragma once

#include <stdexcept>
#include <string>

namespace coalition {

/// A precondition on an argument was violated (unknown player, overlapping
/// blocks, mismatched player sets, ...).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// A request would exceed a configured size cap (enumeration, brute force).
class ResourceError : public std::length_error {
 public:
  using std::length_error::length_error;
};

/// An internal guarantee failed at run time; indicates a bug, not bad input.
class InvariantViolation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// Invalid campaign configuration. Carries a location for diagnostics.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace coalition
