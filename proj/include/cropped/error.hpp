#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace cropped {

// Input that violates a documented precondition or schema. The CLI maps
// these to exit code 2.
class ValidationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A finite-data computation could not reach a verdict (exit code 3).
class InconclusiveError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class NotAUnitError : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

// Prime divides the level (or the model discriminant).
class ExcludedPrimeError : public ValidationError {
 public:
  ExcludedPrimeError(std::uint64_t p, const std::string& what)
      : ValidationError(what + " (p=" + std::to_string(p) + ")"), prime(p) {}
  std::uint64_t prime;
};

// Native class-field arithmetic is only implemented for class number one.
class IngestionOnlyError : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

// Orbit files: three distinct rejection reasons.
class SchemaError : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

class DeligneBoundError : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

class TwistRelationError : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

// Transport failure while fetching a remote orbit.
class FetchError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace cropped
