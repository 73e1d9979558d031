#pragma once

#include <stdexcept>
#include <string>

namespace covfail {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class FenceInvalid : public Error {
 public:
  using Error::Error;
};

/// Two consecutive fence points sit at least r_b apart.
class FenceGapError : public Error {
 public:
  using Error::Error;
};

class FenceRemovalError : public Error {
 public:
  using Error::Error;
};

class UnknownVertex : public Error {
 public:
  using Error::Error;
};

/// A transposition would put a face after its coface or cross a block
/// boundary of the filtration.
class IncidenceError : public Error {
 public:
  using Error::Error;
};

/// An internal invariant of the RU decomposition was observed broken.
class InvariantBreach : public Error {
 public:
  using Error::Error;
};

class BudgetExceeded : public Error {
 public:
  using Error::Error;
};

class TooLarge : public Error {
 public:
  using Error::Error;
};

class AlreadyDead : public Error {
 public:
  using Error::Error;
};

class OutOfOrderEvent : public Error {
 public:
  using Error::Error;
};

class DegenerateGraph : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  ParseError(std::size_t line, const std::string& message)
      : Error("line " + std::to_string(line) + ": " + message), line_(line) {}

  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

}  // namespace covfail
