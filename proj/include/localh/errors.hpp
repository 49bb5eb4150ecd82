#pragma once

#include <stdexcept>
#include <string>

namespace localh {

/// Raised when a computed object contradicts a theorem the library relies on
/// (e.g. a kernel that should equal an explicit ideal does not). Such a
/// failure means a bug or a bad input that slipped past validation.
class InvariantViolation : public std::logic_error {
public:
  using std::logic_error::logic_error;
};

class PreconditionError : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

}  // namespace localh
