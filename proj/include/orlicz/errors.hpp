#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace orlicz {

// Base of everything the library throws on purpose.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed input: bad arguments, unparseable specs, mismatched lengths.
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

// Function or distribution spec that failed to parse. `position` is the
// zero-based offset into the spec string where parsing stopped.
class ParseError : public InvalidArgument {
 public:
  ParseError(std::size_t position, const std::string& what)
      : InvalidArgument("parse error at position " + std::to_string(position) + ": " + what),
        position_(position),
        detail_(what) {}
  std::size_t position() const noexcept { return position_; }
  // Message without the position prefix.
  const std::string& detail() const noexcept { return detail_; }

 private:
  std::size_t position_;
  std::string detail_;
};

// A mathematical hypothesis of an operation does not hold for its input
// (non-convex function, non-normalizable function, non-integrable tail, ...).
class DomainError : public Error {
 public:
  using Error::Error;
};

class NotNormalizedError : public DomainError {
 public:
  using DomainError::DomainError;
};

// The density formula produced a value below the clamping tolerance, so the
// formula does not describe a probability distribution for this input.
class NegativeDensityError : public DomainError {
 public:
  NegativeDensityError(double point, double value)
      : DomainError("negative density " + std::to_string(value) + " at x = " + std::to_string(point)),
        point_(point),
        value_(value) {}
  double point() const noexcept { return point_; }
  double value() const noexcept { return value_; }

 private:
  double point_;
  double value_;
};

class QuadratureError : public Error {
 public:
  using Error::Error;
};

}  // namespace orlicz
