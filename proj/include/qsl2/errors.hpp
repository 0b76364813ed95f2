#pragma once

#include <stdexcept>
#include <string>

namespace qsl2 {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Invalid arithmetic context or run configuration.
class ConfigError : public Error {
 public:
  using Error::Error;
};

// Input outside the generic locus: non-generic colors, vanishing S',
// non-scalar endomorphisms of objects assumed simple.
class DomainError : public Error {
 public:
  using Error::Error;
};

// Ill-formed diagram: signature mismatch, inconsistent colors, bad coupon.
class DiagramError : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  ParseError(const std::string& what, int line, int column)
      : Error(format(what, line, column)), line_(line), column_(column) {}

  int line() const { return line_; }
  int column() const { return column_; }

 private:
  static std::string format(const std::string& what, int line, int column) {
    return "line " + std::to_string(line) + ", column " + std::to_string(column) + ": " + what;
  }

  int line_;
  int column_;
};

}  // namespace qsl2
