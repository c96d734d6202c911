#pragma once

#include <stdexcept>
#include <string>

namespace fracdg {

/// Raised when caller-supplied arguments violate a precondition.
class InvalidArgument : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Raised when an iterative or adaptive numerical procedure fails to meet
/// its tolerance, or a linear system turns out to be singular.
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

namespace detail {
inline void require(bool ok, const std::string& what) {
  if (!ok) throw InvalidArgument(what);
}
}  // namespace detail

}  // namespace fracdg
