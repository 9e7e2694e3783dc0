#pragma once

#include <stdexcept>

namespace strahler {

// Raised when an operation's mathematical precondition does not hold
// (mismatched variables, non-unit constant term, negative powers, poles).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// Raised when a request exceeds a configured enumeration limit.
class ResourceError : public std::length_error {
 public:
  using std::length_error::length_error;
};

}  // namespace strahler
