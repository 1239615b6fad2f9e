#pragma once

#include <stdexcept>
#include <string>

namespace pcoh {

// Base of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Mismatched or out-of-range dimensions.
class DimensionError : public Error {
 public:
  using Error::Error;
};

// Input that fails a domain invariant (norm, hermiticity, simplex, ...).
class ValidationError : public Error {
 public:
  using Error::Error;
};

// Operation called outside its precondition, e.g. synthesis of a
// conversion that majorization forbids.
class PreconditionError : public Error {
 public:
  using Error::Error;
};

// Kraus set whose operators do not sum to the identity.
class CompletenessError : public Error {
 public:
  using Error::Error;
};

// Unknown identifier (function id, suite id, party label).
class LookupError : public Error {
 public:
  using Error::Error;
};

}  // namespace pcoh
