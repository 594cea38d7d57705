#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace fdlp {

/// Root of every error raised by the library. Each subclass names one
/// failure category so callers (and the CLI) can react per kind.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class LengthError : public Error {
 public:
  using Error::Error;
};

class ArgumentError : public Error {
 public:
  using Error::Error;
};

class ValidationError : public Error {
 public:
  using Error::Error;
};

/// Zero-energy input where a model needs a positive power.
class DegenerateSignalError : public Error {
 public:
  using Error::Error;
};

/// Levinson recursion lost positive definiteness.
class IllConditionedError : public Error {
 public:
  IllConditionedError(const std::string& what, std::size_t order)
      : Error(what), order_(order) {}
  std::size_t failing_order() const noexcept { return order_; }

 private:
  std::size_t order_;
};

class InstabilityError : public Error {
 public:
  using Error::Error;
};

class NumericError : public Error {
 public:
  using Error::Error;
};

class ResolutionError : public Error {
 public:
  using Error::Error;
};

class UnsupportedFormatError : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t offset)
      : Error(what + " (byte offset " + std::to_string(offset) + ")"),
        offset_(offset) {}
  std::size_t byte_offset() const noexcept { return offset_; }

 private:
  std::size_t offset_;
};

class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace fdlp
