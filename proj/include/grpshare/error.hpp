#pragma once

#include <stdexcept>
#include <string>

namespace grpshare {

/// Raised when an argument violates an operation's precondition.
class PreconditionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Raised on malformed text input (words, presentations, bundles, manifests).
class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Raised when a rejection-sampling or search budget runs out.
class BudgetExhausted : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Raised when decoded data is inconsistent with the session (corruption,
/// wrong group, insufficient shares).
class DataError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

namespace detail {

inline void require(bool condition, const std::string& message) {
  if (!condition) {
    throw PreconditionError(message);
  }
}

}  // namespace detail

}  // namespace grpshare
