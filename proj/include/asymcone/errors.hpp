#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace asymcone {

// Base of every error thrown by the library.
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Malformed mesh input. `line()` is 1-based; 0 when not tied to a line.
class ParseError : public Error {
public:
  ParseError(const std::string& what, std::size_t line)
      : Error(line ? "line " + std::to_string(line) + ": " + what : what), line_(line) {}
  std::size_t line() const noexcept { return line_; }

private:
  std::size_t line_;
};

class TopologyError : public Error {
public:
  using Error::Error;
};

class OrientationError : public Error {
public:
  using Error::Error;
};

class DomainError : public Error {
public:
  using Error::Error;
};

class PreconditionError : public Error {
public:
  using Error::Error;
};

class QuadratureError : public Error {
public:
  QuadratureError(const std::string& what, std::size_t cell_budget)
      : Error(what + " (cell budget " + std::to_string(cell_budget) + ")"),
        budget_(cell_budget) {}
  std::size_t budget() const noexcept { return budget_; }

private:
  std::size_t budget_;
};

class ArityError : public Error {
public:
  using Error::Error;
};

class TagError : public Error {
public:
  using Error::Error;
};

class SeedError : public Error {
public:
  using Error::Error;
};

class ConfigError : public Error {
public:
  using Error::Error;
};

} // namespace asymcone
