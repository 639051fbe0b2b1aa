#pragma once

#include <stdexcept>
#include <string>

namespace mdembed {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Input violates a documented invariant (metric axioms, measure positivity,
/// malformed graph, bad generator parameters).
class InvalidInput : public Error {
 public:
  using Error::Error;
};

/// File or text could not be parsed.
class ParseError : public Error {
 public:
  using Error::Error;
};

}  // namespace mdembed
