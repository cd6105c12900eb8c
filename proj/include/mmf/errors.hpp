#pragma once

#include <stdexcept>
#include <string>

namespace mmf {

// A coefficient was requested (or would be produced) beyond the order up to
// which it is known exactly.
class PrecisionError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// An argument outside the admissible residue classes or ranges.
class DomainError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// A value that must be an integer turned out not to be one.
class IntegralityError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace mmf
