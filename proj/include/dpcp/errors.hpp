#pragma once

#include <stdexcept>
#include <string>

namespace dpcp {

// Bad argument values: non-finite data, negative counts, mismatched lengths.
class InvalidInput : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Allocation sequences that violate the staircase structure.
class InvalidState : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class InvalidTransition : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class NumericError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Draw files: bad version tag, truncated stream, malformed records.
class FormatError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Finite-state filter found no path with positive probability.
class InfeasiblePath : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace dpcp
