#pragma once

#include <stdexcept>
#include <string>

namespace modcoh {

/// Base class for all toolkit failures.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Caller passed something malformed: shapes, degrees, unknown names.
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

/// Input text could not be parsed.
class ParseError : public Error {
 public:
  using Error::Error;
};

/// A requested exhaustive computation exceeds its configured bound.
class SizeLimitExceeded : public Error {
 public:
  SizeLimitExceeded(const std::string& what, double requested, double bound)
      : Error(what + " (requested " + std::to_string(requested) +
              ", bound " + std::to_string(bound) + ")"),
        requested_(requested),
        bound_(bound) {}
  double requested() const noexcept { return requested_; }
  double bound() const noexcept { return bound_; }

 private:
  double requested_;
  double bound_;
};

/// A mathematical precondition does not hold (non-cocycle, non-separating
/// state, Jacobi failure, ...).
class MathError : public Error {
 public:
  using Error::Error;
};

}  // namespace modcoh
