#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace crnb {

enum class ErrorKind {
  Parse,
  Partition,
  NotBisimulation,
  Precondition,
  Integration,
  Argument,
  Io,
};

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

/// Syntax or semantic error in an input document. Line and column are
/// 1-based; column 0 means "whole line".
class ParseError : public Error {
 public:
  ParseError(std::size_t line, std::size_t column, const std::string& message)
      : Error(ErrorKind::Parse, format(line, column, message)),
        line_(line),
        column_(column) {}

  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }

 private:
  static std::string format(std::size_t line, std::size_t column,
                            const std::string& message) {
    std::string out = "line " + std::to_string(line);
    if (column != 0) out += ", column " + std::to_string(column);
    return out + ": " + message;
  }

  std::size_t line_;
  std::size_t column_;
};

}  // namespace crnb
