#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace rsaudit {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// Malformed delimited text (ragged rows, broken quoting, bad numbers).
class ParseError : public Error {
  public:
    ParseError(const std::string &message, std::size_t line)
        : Error("line " + std::to_string(line) + ": " + message), line_(line) {}

    [[nodiscard]] std::size_t line() const noexcept { return line_; }

  private:
    std::size_t line_;
};

/// Missing columns, out-of-domain values, inconsistent schemas, bad config.
class SchemaError : public Error {
  public:
    using Error::Error;
};

/// A raw label string that no rule of the label map accepts.
class LabelMapError : public SchemaError {
  public:
    using SchemaError::SchemaError;
};

/// A precondition of an analysis operation does not hold (e.g. no split tags).
class ContractError : public Error {
  public:
    using Error::Error;
};

/// Filesystem failures; the message always carries the path.
class IoError : public Error {
  public:
    using Error::Error;
};

/// Invalid synthetic-generation plan.
class SpecError : public Error {
  public:
    using Error::Error;
};

}  // namespace rsaudit
