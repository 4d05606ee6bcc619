#pragma once

#include <stdexcept>
#include <string>

namespace growth {

/// Malformed documents, bad arguments, violated preconditions.
class InvalidInput : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A computation would exceed a configured size bound (matrix order, table cells).
class SizeBoundExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// The requested method does not apply to the given input.
class Inapplicable : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An iterative solver ran out of budget without meeting its tolerance.
class ConvergenceFailure : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace growth
