#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace venuerec {

/// Base class for every error raised by the library. The module name is
/// carried separately so drivers can print module-qualified messages.
class Error : public std::runtime_error {
 public:
  Error(std::string module, const std::string& what)
      : std::runtime_error(what), module_(std::move(module)) {}

  const std::string& module() const noexcept { return module_; }

 private:
  std::string module_;
};

/// A value lies outside its admissible range (e.g. a rating off its scale).
class RangeError : public Error {
 public:
  using Error::Error;
};

/// Malformed input text. `line` is 1-based; 0 when not line-oriented.
class ParseError : public Error {
 public:
  ParseError(std::string module, const std::string& what, std::size_t line = 0)
      : Error(std::move(module),
              line == 0 ? what : "line " + std::to_string(line) + ": " + what),
        line_(line) {}

  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

/// Well-formed input that violates a cross-record or domain invariant.
class ValidationError : public Error {
 public:
  using Error::Error;
};

/// Bad experiment configuration (missing keys, impossible settings).
class ConfigError : public Error {
 public:
  using Error::Error;
};

/// A ranker has nothing to learn from (no same-user pairs with different labels).
class NoRankingSignal : public Error {
 public:
  explicit NoRankingSignal(std::string module)
      : Error(std::move(module), "no ranking signal") {}
};

}  // namespace venuerec
