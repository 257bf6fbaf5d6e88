#pragma once

#include <stdexcept>
#include <string>

namespace mercerlab {

/// Bad input: wrong sizes, out-of-interval points, invalid parameters.
class InvalidArgument : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A computation produced a non-finite value or failed to converge.
class NumericalFailure : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Nystrom extension requested for an eigenvalue at or below the clipping floor.
class DegenerateEigenvalue : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// An operation that needs a positive operator got one with a negative eigenvalue.
class NotPositive : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

}  // namespace mercerlab
