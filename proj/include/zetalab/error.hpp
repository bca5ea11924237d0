#pragma once

#include <stdexcept>
#include <string>

namespace zetalab {

// Base of every error thrown by the library. Subclasses carry the category so
// the CLI can map them to exit codes.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A precondition on the arguments was violated (n = 0, non-prime p, ...).
class DomainError : public Error {
 public:
  using Error::Error;
};

// An iterative method (quadrature, Jacobi sweeps, root polishing) did not
// reach the requested tolerance.
class ConvergenceError : public Error {
 public:
  using Error::Error;
};

// Malformed text input (zero tables, divisors, matrix JSON).
class ParseError : public Error {
 public:
  using Error::Error;
};

// Validation of an ingested data set failed (ordering, sanity anchors).
class ValidationError : public Error {
 public:
  using Error::Error;
};

class NetworkError : public Error {
 public:
  using Error::Error;
};

}  // namespace zetalab
