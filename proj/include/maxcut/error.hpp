#pragma once

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace maxcut {

class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Argument violates an operation's precondition (bad vertex id, length mismatch, ...).
class InvalidInput : public Error {
public:
  using Error::Error;
};

/// Request exceeds what the implementation can handle (e.g. brute force on large n).
class CapacityError : public Error {
public:
  using Error::Error;
};

/// Malformed text input; carries the 1-based line number of the offending line.
class ParseError : public Error {
public:
  ParseError(std::size_t line, const std::string& what)
      : Error("line " + std::to_string(line) + ": " + what), line_(line) {}

  std::size_t line() const noexcept { return line_; }

private:
  std::size_t line_;
};

/// Well-formed lines that disagree with the declared header (edge count mismatch).
class StructuralError : public Error {
public:
  using Error::Error;
};

class TrainingFailure : public Error {
public:
  TrainingFailure(std::int64_t step, const std::string& what)
      : Error("training diverged at step " + std::to_string(step) + ": " + what), step_(step) {}

  std::int64_t step() const noexcept { return step_; }

private:
  std::int64_t step_;
};

/// No published default parameters exist for the requested instance family.
class NoDefault : public Error {
public:
  using Error::Error;
};

}  // namespace maxcut
