#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace oreq {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed or mismatched input: wrong descriptor, shape mismatch, bad literal.
class InputError : public Error {
 public:
  using Error::Error;
};

/// Text that does not conform to the polynomial or literal grammar.
class ParseError : public InputError {
 public:
  ParseError(const std::string& what, std::size_t position)
      : InputError(what + " at position " + std::to_string(position)), position_(position) {}

  std::size_t position() const noexcept { return position_; }

 private:
  std::size_t position_;
};

/// A mathematical precondition does not hold (non-unit inversion, failed
/// clubsuit condition, missing annihilator, non-idempotent input, ...).
class PreconditionError : public Error {
 public:
  using Error::Error;
};

/// The requested operation is outside the supported class of rings.
class UnsupportedError : public Error {
 public:
  using Error::Error;
};

}  // namespace oreq
