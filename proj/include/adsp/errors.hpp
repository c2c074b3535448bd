#pragma once

#include <stdexcept>
#include <string>

namespace adsp {

/// Malformed or out-of-contract input. Maps to CLI exit code 1.
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A postcondition the code itself guarantees did not hold. Exit code 2.
class InternalError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// A configured size cap (box points, DP states, ...) was exceeded. Exit code 3.
class ResourceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline void require_input(bool ok, const std::string& what) {
  if (!ok) throw InputError(what);
}

inline void ensure(bool ok, const std::string& what) {
  if (!ok) throw InternalError(what);
}

}  // namespace adsp
