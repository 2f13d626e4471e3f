#pragma once

#include <stdexcept>
#include <string>

namespace kwx {

/// Base class for every error raised by the engine.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed or inconsistent input data (corpus files, predictions, tables).
class DataError : public Error {
 public:
  using Error::Error;
};

/// Invalid arguments or configuration supplied by the caller.
class UsageError : public Error {
 public:
  using Error::Error;
};

/// Failure reported by an embedding provider.
class ProviderError : public Error {
 public:
  using Error::Error;
};

}  // namespace kwx
