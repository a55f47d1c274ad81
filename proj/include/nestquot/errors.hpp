#pragma once

#include <stdexcept>
#include <string>

namespace nestquot {

/// Base class for every error the library reports to callers.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Shape or argument mismatch (ambient dimensions, number of variables...).
class DimensionMismatch : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  ParseError(std::size_t line, const std::string& what)
      : Error("line " + std::to_string(line) + ": " + what), line_(line) {}
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

/// Input data violates a structural invariant (commuting, stability, chain
/// compatibility...).
class InvalidPoint : public Error {
 public:
  using Error::Error;
};

class IrrationalSupport : public Error {
 public:
  using Error::Error;
};

class OverlappingSupports : public Error {
 public:
  using Error::Error;
};

class TruncationTooSmall : public Error {
 public:
  using Error::Error;
};

class Unsupported : public Error {
 public:
  using Error::Error;
};

class ResourceBoundExceeded : public Error {
 public:
  using Error::Error;
};

class NotCommuting : public InvalidPoint {
 public:
  using InvalidPoint::InvalidPoint;
};

class NotStable : public InvalidPoint {
 public:
  using InvalidPoint::InvalidPoint;
};

}  // namespace nestquot
