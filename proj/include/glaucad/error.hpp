#pragma once

#include <stdexcept>
#include <string>

namespace glaucad {

/// Bad input: empty images, out-of-range parameters, malformed files.
class InputError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A computation produced a non-finite value or could not proceed numerically.
class NumericError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

namespace detail {

inline void require(bool cond, const std::string& what) {
  if (!cond) throw InputError(what);
}

}  // namespace detail
}  // namespace glaucad
