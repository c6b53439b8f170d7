#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>

namespace cdst {

// Base of every error thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed or out-of-contract input: bad files, bad names, invalid masses.
class InputError : public Error {
 public:
  using Error::Error;
};

class ParseError : public InputError {
 public:
  ParseError(std::string message, std::optional<std::size_t> line = std::nullopt)
      : InputError(line ? "line " + std::to_string(*line) + ": " + message : message),
        line_(line) {}

  std::optional<std::size_t> line() const noexcept { return line_; }

 private:
  std::optional<std::size_t> line_;
};

// A desk-scale bound was exceeded (see Limits).
class CapacityError : public InputError {
 public:
  using InputError::InputError;
};

// A structural precondition of a construction does not hold.
class PreconditionError : public InputError {
 public:
  using InputError::InputError;
};

// Well-formed input on which the requested operation is undefined.
class DomainError : public Error {
 public:
  using Error::Error;
};

class TotalConflictError : public DomainError {
 public:
  TotalConflictError(std::string message, std::size_t step = 1)
      : DomainError(std::move(message)), step_(step) {}

  // 1-based index of the combination step that hit total conflict.
  std::size_t step() const noexcept { return step_; }

 private:
  std::size_t step_;
};

// A table handed to an inversion routine is not induced by any mass function.
class NotABeliefFunctionError : public DomainError {
 public:
  using DomainError::DomainError;
};

}  // namespace cdst
