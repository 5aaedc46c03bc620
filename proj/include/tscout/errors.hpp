#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace tscout {

// Base class for all errors raised by this library.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// Malformed structure string or record; carries the character offset of the
// first offending token.
class ParseError : public Error {
 public:
  ParseError(const std::string& msg, std::size_t offset)
      : Error(msg + " (at offset " + std::to_string(offset) + ")"),
        offset_(offset) {}

  std::size_t offset() const noexcept { return offset_; }

 private:
  std::size_t offset_;
};

// File missing, unreadable, corrupt, or digest mismatch.
class IoError : public Error {
 public:
  using Error::Error;
};

// Curve or distribution fit cannot be carried out on the given data.
class FitError : public Error {
 public:
  using Error::Error;
};

// Affinity provider has no entry for a required key.
class CoverageError : public Error {
 public:
  using Error::Error;
};

// Invalid configuration or argument values.
class ConfigError : public Error {
 public:
  using Error::Error;
};

}  // namespace tscout
