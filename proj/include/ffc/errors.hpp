#pragma once

#include <stdexcept>
#include <string>

namespace ffc {

// Base of everything this library throws on contract violations.
class Error : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

// Operands live in different prime fields.
class FieldMismatch : public Error {
  public:
    using Error::Error;
};

class DimensionMismatch : public Error {
  public:
    using Error::Error;
};

// An operation's documented precondition does not hold.
class PreconditionError : public Error {
  public:
    using Error::Error;
};

// A state-space, set-size or candidate-count cap was exceeded.
class GuardExceeded : public Error {
  public:
    using Error::Error;
};

class ParseError : public Error {
  public:
    ParseError(const std::string& source, std::size_t line, std::size_t column, const std::string& what)
        : Error(source + ":" + std::to_string(line) + ":" + std::to_string(column) + ": " + what),
          line_(line), column_(column) {}

    std::size_t line() const noexcept { return line_; }
    std::size_t column() const noexcept { return column_; }

  private:
    std::size_t line_;
    std::size_t column_;
};

} // namespace ffc
