#pragma once

#include <stdexcept>
#include <string>

namespace bayescal {

/// Malformed input text: CSV rows, JSON documents, numeric literals.
class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A value or configuration that parses but violates a precondition.
class ValidationError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Raised when a class has too few background scores for the requested fit.
class InsufficientDataError : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace bayescal
