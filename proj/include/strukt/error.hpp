#pragma once

#include <stdexcept>
#include <string>

namespace strukt {

/// Base of every error raised by the toolkit.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed input text. `line()` is 1-based, 0 when not line-oriented.
class ParseError : public Error {
 public:
  ParseError(int line, const std::string& what)
      : Error(line > 0 ? "line " + std::to_string(line) + ": " + what : what), line_(line) {}
  int line() const noexcept { return line_; }

 private:
  int line_;
};

/// Well-formed input that violates a structural invariant (loops, out-of-range ids).
class ValidationError : public Error {
 public:
  using Error::Error;
};

/// Argument outside an operation's domain (n < 3 for a double wheel, disconnected input, ...).
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Violated precondition of an operation; the message names the clause.
class ContractError : public Error {
 public:
  using Error::Error;
};

class MissingEdgeError : public ContractError {
 public:
  using ContractError::ContractError;
};

/// A search budget was exhausted. Never accompanied by a partial answer.
class ResourceError : public Error {
 public:
  using Error::Error;
};

}  // namespace strukt
