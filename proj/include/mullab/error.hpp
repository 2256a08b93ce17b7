#ifndef MULLAB_ERROR_HPP
#define MULLAB_ERROR_HPP

#include <cstddef>
#include <stdexcept>
#include <string>

namespace mullab {

// Base of every error thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Two label sets (or a model and a dataset) live in different label universes.
class LabelSpaceError : public Error {
 public:
  using Error::Error;
};

// Malformed input data: empty datasets, arity mismatches, bad label columns.
class DataError : public Error {
 public:
  using Error::Error;
};

// Invalid parameters or configuration.
class ConfigError : public Error {
 public:
  using Error::Error;
};

// ARFF syntax error. what() reads "line <n>: <message>", prefixed by
// "<source>: " when the input came from a named file.
class ParseError : public DataError {
 public:
  ParseError(std::size_t line, const std::string& message, const std::string& source = "")
      : DataError((source.empty() ? "" : source + ": ") + "line " + std::to_string(line) + ": " + message),
        line_(line),
        message_(message) {}

  std::size_t line() const noexcept { return line_; }
  const std::string& message() const noexcept { return message_; }

 private:
  std::size_t line_;
  std::string message_;
};

}  // namespace mullab

#endif  // MULLAB_ERROR_HPP
