#pragma once

#include <stdexcept>
#include <string>

namespace hermcap {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Unsupported field order, malformed file metadata, bad parameters.
class ConfigError : public Error {
 public:
  using Error::Error;
};

/// Bad command-line usage or an unknown output format.
class UsageError : public Error {
 public:
  using Error::Error;
};

/// Adding a point that is already covered by the cap.
class CapViolation : public Error {
 public:
  using Error::Error;
};

class NotFound : public Error {
 public:
  using Error::Error;
};

/// A value is outside the domain of an operation (weight of a non-member,
/// pole on the surface, a point set that is not a cap, ...).
class DomainError : public Error {
 public:
  using Error::Error;
};

class ArgumentError : public Error {
 public:
  using Error::Error;
};

}  // namespace hermcap
