#pragma once

#include <stdexcept>
#include <string>

namespace turnsearch {

/// Caller supplied arguments that violate an operation's preconditions.
class InputError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A solver invariant broke (e.g. the pivot budget ran out).
class InternalError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// The equality oracle cannot be used on this LP.
class OracleNotApplicable : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A guarantee audit could not evaluate every probe.
class AuditError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace turnsearch
