#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

#include <gmpxx.h>

namespace wreathord {

using BigInt = mpz_class;

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class InvalidArgument : public Error {
 public:
  using Error::Error;
};

/// Operands live in different groups (rank, order or witness mismatch).
class ParameterMismatch : public Error {
 public:
  using Error::Error;
};

/// The requested order comparison could not be decided exactly.
class UndecidedError : public Error {
 public:
  explicit UndecidedError(BigInt bound)
      : Error("equality undecided: all coordinates up to " + bound.get_str() + " agree"),
        bound_(std::move(bound)) {}
  const BigInt& bound() const noexcept { return bound_; }

 private:
  BigInt bound_;
};

class UnsupportedWordset : public Error {
 public:
  using Error::Error;
};

/// An identity the construction relies on failed to hold.
class ConstructionViolated : public Error {
 public:
  using Error::Error;
};

/// Base function whose support is not bounded below; the least-difference order is undefined.
class NotWellOrdered : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  ParseError(std::size_t pos, std::string expected, const std::string& found)
      : Error("parse error at position " + std::to_string(pos) + ": expected " + expected +
              (found.empty() ? "" : ", found '" + found + "'")),
        pos_(pos),
        expected_(std::move(expected)) {}
  std::size_t position() const noexcept { return pos_; }
  const std::string& expected() const noexcept { return expected_; }

 private:
  std::size_t pos_;
  std::string expected_;
};

}  // namespace wreathord
