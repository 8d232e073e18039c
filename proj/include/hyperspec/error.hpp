#pragma once

#include <stdexcept>
#include <string>

namespace hyperspec {

/// Malformed input: bad parameters, unparsable files, precondition violations.
class InputError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A request exceeds a desk-scale search cap (vertex count, search space).
class CapExceeded : public std::length_error {
 public:
  using std::length_error::length_error;
};

}  // namespace hyperspec
