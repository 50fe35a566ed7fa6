#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace hytab {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t position)
      : Error(what + " at offset " + std::to_string(position)), position_(position) {}

  std::size_t position() const noexcept { return position_; }

 private:
  std::size_t position_;
};

// Bad world reference, uninterpreted nominal, malformed model file.
class ModelError : public Error {
 public:
  using Error::Error;
};

// A documented precondition does not hold (unsaturated branch, non-transitive frame, ...).
class PreconditionError : public Error {
 public:
  using Error::Error;
};

// Exhaustive search refused to run past its configured limit.
class BudgetError : public Error {
 public:
  using Error::Error;
};

}  // namespace hytab
