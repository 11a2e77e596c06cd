#pragma once

#include <stdexcept>
#include <string>

namespace pscli {

/// Base class for all library errors.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Bad parameters or a request outside an operation's domain.
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

/// Singular systems, non-convergent schemes and similar numerical failures.
class NumericalError : public Error {
 public:
  using Error::Error;
};

/// An iteration blew past the divergence threshold.
class DivergenceError : public Error {
 public:
  using Error::Error;
};

}  // namespace pscli
