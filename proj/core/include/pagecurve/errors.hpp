// errors.hpp - exception types shared by every pagecurve module
#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace pagecurve {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A parameter failed validation. field() names the offending key.
class ValidationError : public Error {
 public:
  ValidationError(std::string field, const std::string& message)
      : Error(field + ": " + message), field_(std::move(field)) {}
  const std::string& field() const noexcept { return field_; }

 private:
  std::string field_;
};

/// Malformed configuration text; line() is 1-based, 0 when not tied to a line.
class ParseError : public Error {
 public:
  ParseError(int line, const std::string& message)
      : Error(line > 0 ? "line " + std::to_string(line) + ": " + message : message),
        line_(line) {}
  int line() const noexcept { return line_; }

 private:
  int line_;
};

/// The fixed-particle-number sector does not fit the configured state cap.
class CapacityError : public Error {
 public:
  CapacityError(int sites, int particles, std::uint64_t dimension, std::uint64_t cap)
      : Error("sector dimension C(" + std::to_string(sites) + ", " + std::to_string(particles) +
              ") = " + std::to_string(dimension) + " exceeds capacity " + std::to_string(cap)),
        sites_(sites), particles_(particles), dimension_(dimension) {}
  int sites() const noexcept { return sites_; }
  int particles() const noexcept { return particles_; }
  std::uint64_t dimension() const noexcept { return dimension_; }

 private:
  int sites_;
  int particles_;
  std::uint64_t dimension_;
};

class UnsupportedModelError : public Error {
 public:
  using Error::Error;
};

class NumericError : public Error {
 public:
  using Error::Error;
};

/// Krylov propagation did not converge within the subspace cap; reduce dt.
class StepSizeError : public Error {
 public:
  using Error::Error;
};

class RangeError : public Error {
 public:
  using Error::Error;
};

class InputError : public Error {
 public:
  using Error::Error;
};

class FitError : public Error {
 public:
  using Error::Error;
};

class DomainError : public Error {
 public:
  using Error::Error;
};

class FileError : public Error {
 public:
  using Error::Error;
};

}  // namespace pagecurve
