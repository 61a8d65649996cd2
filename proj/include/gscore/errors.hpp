#pragma once

#include <stdexcept>
#include <string>

namespace gscore {

/// Invalid argument or configuration value (bad l0, alpha_max, i_max...).
class ParameterError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Input data violates a value invariant, e.g. NaN/Inf entries.
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed file contents. The message carries the row or byte location.
class FormatError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A structure handed between stages broke its own invariants.
class InternalError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// Raised when a run is stopped through its stop token.
class Cancelled : public std::runtime_error {
 public:
  Cancelled() : std::runtime_error("run cancelled") {}
};

}  // namespace gscore
