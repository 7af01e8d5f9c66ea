#pragma once

#include <stdexcept>
#include <string>

namespace cxtcat {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A set, relation or morphism was used with a context (or lattice) it does
/// not index into.
class DomainMismatch : public Error {
 public:
  using Error::Error;
};

/// A desk-scale size cap would be exceeded.
class SizeCapExceeded : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t line)
      : Error("line " + std::to_string(line) + ": " + what), line_(line) {}
  explicit ParseError(const std::string& what) : Error(what) {}
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_ = 0;
};

/// Input violates a structural invariant (non-closed row, non-monotone map, ...).
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

/// A documented precondition (e.g. mutual distributivity) does not hold.
class PreconditionFailed : public Error {
 public:
  using Error::Error;
};

}  // namespace cxtcat
