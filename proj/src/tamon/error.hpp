#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace tamon {

enum class ErrorKind {
  Parse,
  InvalidArgument,
  UnboundParameter,
  MalformedGuard,
  UnknownLetter,
  Unsupported,
  Contract,
  Overflow,
};

const char* to_string(ErrorKind kind);

// Single exception type for the library; the C API maps `kind()` onto status
// codes.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

// Parse error that remembers the (1-based) line it came from; 0 if unknown.
class ParseError : public Error {
 public:
  ParseError(std::size_t line, const std::string& what)
      : Error(ErrorKind::Parse,
              line == 0 ? what : "line " + std::to_string(line) + ": " + what),
        line_(line) {}

  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

}  // namespace tamon
