#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace limitnerve {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Grammar violation in a group-definition file.
class ParseError : public Error {
 public:
  ParseError(std::size_t line, std::size_t column, const std::string& message)
      : Error("parse error at " + std::to_string(line) + ":" +
              std::to_string(column) + ": " + message),
        line_(line),
        column_(column) {}

  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

/// Grammatically valid input that does not define a wreath recursion.
class InvalidRecursion : public Error {
 public:
  explicit InvalidRecursion(const std::string& message)
      : Error("invalid recursion: " + message) {}
};

/// An effort budget ran out before a computation finished. Never a verdict.
class BudgetExceeded : public Error {
 public:
  BudgetExceeded(const std::string& what, std::size_t limit)
      : Error(what + " exceeded budget (limit " + std::to_string(limit) + ")"),
        limit_(limit) {}

  std::size_t limit() const { return limit_; }

 private:
  std::size_t limit_;
};

/// Saturation did not stabilise within the allowed number of rounds.
class RoundLimitExceeded : public Error {
 public:
  explicit RoundLimitExceeded(std::size_t rounds)
      : Error("nucleus saturation did not stabilise within " +
              std::to_string(rounds) + " rounds"),
        rounds_(rounds) {}

  std::size_t rounds() const { return rounds_; }

 private:
  std::size_t rounds_;
};

/// A construction would exceed its memory/size limit.
class ResourceLimit : public Error {
 public:
  using Error::Error;
};

/// An internal identification turned out to be ill-defined.
class ConsistencyError : public Error {
 public:
  using Error::Error;
};

/// Two independent constructions disagree; carries a witness description.
class ValidationFailure : public Error {
 public:
  ValidationFailure(const std::string& check, const std::string& witness)
      : Error("validation failed (" + check + "): " + witness),
        check_(check),
        witness_(witness) {}

  const std::string& check() const { return check_; }
  const std::string& witness() const { return witness_; }

 private:
  std::string check_;
  std::string witness_;
};

/// A contraction certificate row failed its containment checks.
class CertificateFailure : public Error {
 public:
  using Error::Error;
};

/// No multinucleus depth was found up to the requested bound.
class NotFoundWithinBound : public Error {
 public:
  explicit NotFoundWithinBound(std::size_t bound)
      : Error("multinucleus depth not found up to " + std::to_string(bound)),
        bound_(bound) {}

  std::size_t bound() const { return bound_; }

 private:
  std::size_t bound_;
};

}  // namespace limitnerve
