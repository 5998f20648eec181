#pragma once

#include <stdexcept>
#include <string>

namespace classnum {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed or invalid user input (corpus entries, CLI arguments, curve models).
class InputError : public Error {
 public:
  using Error::Error;
};

/// Corpus parse failure with the offending line and field attached.
class ParseError : public InputError {
 public:
  ParseError(const std::string& message, int line, std::string field)
      : InputError(format(message, line, field)), line_(line), field_(std::move(field)) {}

  int line() const noexcept { return line_; }
  const std::string& field() const noexcept { return field_; }

 private:
  static std::string format(const std::string& message, int line, const std::string& field) {
    std::string out = "line " + std::to_string(line);
    if (!field.empty()) out += ", field '" + field + "'";
    return out + ": " + message;
  }

  int line_;
  std::string field_;
};

class CeilingExceeded : public Error {
 public:
  using Error::Error;
};

class ModelUnsupported : public Error {
 public:
  using Error::Error;
};

class InconsistentCounts : public Error {
 public:
  using Error::Error;
};

class NonIntegralCoefficient : public Error {
 public:
  using Error::Error;
};

class MatchFailure : public Error {
 public:
  using Error::Error;
};

class IdentityViolation : public Error {
 public:
  using Error::Error;
};

class SpectrumTooShort : public Error {
 public:
  using Error::Error;
};

class HypothesisFailed : public Error {
 public:
  using Error::Error;
};

class DegenerateGenus : public Error {
 public:
  using Error::Error;
};

class DomainError : public Error {
 public:
  using Error::Error;
};

}  // namespace classnum
