#pragma once

#include <stdexcept>
#include <string>

namespace leafspec {

// Bad caller input: malformed documents, violated preconditions, exceeded
// work limits. The CLI maps these to exit status 1.
class InputError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// A work limit would be exceeded. Never silently truncates.
class LimitError : public InputError {
 public:
  using InputError::InputError;
};

// An internal invariant failed (for example a certificate did not verify).
// This indicates a bug; the CLI maps it to exit status 2.
class InvariantError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

inline void check_invariant(bool ok, const std::string& what) {
  if (!ok) throw InvariantError(what);
}

}  // namespace leafspec
