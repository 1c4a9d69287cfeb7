#pragma once

#include <stdexcept>
#include <string>

namespace hrpkit {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A caller broke a documented precondition (shape mismatch, empty input, ...).
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

/// Input files are missing, malformed, or leave nothing usable after filtering.
class DataError : public Error {
 public:
  using Error::Error;
};

/// A numerical precondition failed: zero variance, singular matrix, zero volatility.
class NumericError : public Error {
 public:
  using Error::Error;
};

/// A run configuration failed validation. The CLI maps this to exit code 2.
class ConfigError : public Error {
 public:
  using Error::Error;
};

}  // namespace hrpkit
