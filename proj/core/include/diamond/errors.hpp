#pragma once

#include <stdexcept>
#include <string>

namespace diamond {

// A level index outside the range an operation accepts (e.g. truncating a
// word to a level deeper than the word itself).
class InvalidLevelError : public std::out_of_range {
 public:
  using std::out_of_range::out_of_range;
};

// Malformed input: bad digits, w outside (0,1), inexact fractions, ...
class InvalidParameterError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Requested work exceeds the configured memory budget.
class ResourceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace diamond
