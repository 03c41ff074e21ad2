#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace solgenus {

// Raised for inputs outside an operation's domain (|det| != 1, square
// discriminants, mismatched discriminants, ...). The CLI maps it to exit 1.
class DomainError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Characteristic polynomial is reducible or has a repeated root where an
// irreducible one is required.
class DegenerateSpectrum : public DomainError {
 public:
  using DomainError::DomainError;
};

class ParseError : public DomainError {
 public:
  ParseError(const std::string& what, std::size_t position)
      : DomainError(what + " at position " + std::to_string(position)),
        position_(position) {}

  std::size_t position() const noexcept { return position_; }

 private:
  std::size_t position_;
};

// A postcondition that should hold by construction did not. Always a bug.
class InternalError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace solgenus
