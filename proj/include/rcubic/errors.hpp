#pragma once

#include <stdexcept>
#include <string>

namespace rcubic {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Non-finite coefficient or density parameter.
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

/// Coefficients on the repeated-root event S, where R* is not defined.
class DegenerateInput : public Error {
 public:
  using Error::Error;
};

/// Operation requested on coefficients from the wrong discriminant event.
class WrongEvent : public Error {
 public:
  using Error::Error;
};

/// Point lies outside the image region of the requested event.
class OutsideRegion : public Error {
 public:
  using Error::Error;
};

/// The coefficient density gives zero probability to the conditioning event.
class DegenerateDensity : public Error {
 public:
  using Error::Error;
};

/// No finite box holding all but the allowed mass could be established.
class TruncationFailure : public Error {
 public:
  using Error::Error;
};

class ShapeMismatch : public Error {
 public:
  using Error::Error;
};

/// Malformed configuration document (syntax, unknown key, bad literal).
class ParseError : public Error {
 public:
  using Error::Error;
};

/// Well-formed configuration value that violates a constraint.
class ValidationError : public Error {
 public:
  ValidationError(std::string field, const std::string& what)
      : Error(field + ": " + what), field_(std::move(field)) {}

  const std::string& field() const noexcept { return field_; }

 private:
  std::string field_;
};

}  // namespace rcubic
