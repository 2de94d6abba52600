#ifndef FOLP_ERROR_HPP
#define FOLP_ERROR_HPP

#include <cstddef>
#include <stdexcept>
#include <string>

namespace folp {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Raised by the concrete-syntax parser. Positions are 1-based.
class SyntaxError : public Error {
 public:
  SyntaxError(const std::string& message, std::size_t line, std::size_t column)
      : Error(std::to_string(line) + ":" + std::to_string(column) + ": " + message),
        line_(line),
        column_(column) {}

  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

/// Substitution would place a variable under a binder of the same name.
class CaptureError : public Error {
 public:
  using Error::Error;
};

/// Malformed CS, model, or proof file content.
class FormatError : public Error {
 public:
  using Error::Error;
};

/// Ill-formed model or query handed to the model evaluator.
class ModelError : public Error {
 public:
  using Error::Error;
};

}  // namespace folp

#endif  // FOLP_ERROR_HPP
