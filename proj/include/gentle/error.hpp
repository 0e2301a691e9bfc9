#pragma once

#include <stdexcept>
#include <string>

namespace gentle {

/// A caller broke an operation's documented precondition.
class PreconditionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// An exhaustive routine was asked to run above its configured size cap.
class SizeCapError : public std::length_error {
 public:
  using std::length_error::length_error;
};

/// A user-supplied callback or embedding did not satisfy its contract.
class ContractError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An internal guarantee failed. Seeing this means a bug.
class InvariantError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// Iterative numeric routine did not converge.
class ConvergenceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

namespace detail {

inline void require(bool ok, const std::string& what) {
  if (!ok) throw PreconditionError(what);
}

}  // namespace detail
}  // namespace gentle
