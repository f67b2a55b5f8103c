#pragma once

#include <stdexcept>

namespace deltalab {

// Input text does not match its documented grammar.
class ParseError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

// A domain invariant or declared precondition is violated.
class InvariantError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

// An index or parameter falls outside the tabulated range.
class RangeError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

}  // namespace deltalab
