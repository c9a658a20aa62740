#pragma once

#include <stdexcept>
#include <string>

namespace angelesco {

// Bad user input: invalid intervals, unknown weight names, malformed files.
class InputError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// A numerical routine could not produce a trustworthy value (division
// guard tripped, bracket without a sign change, positivity lost, ...).
class NumericalFailure : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace angelesco
