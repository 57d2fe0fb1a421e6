#pragma once

#include <stdexcept>
#include <string>

namespace maxmean {

/// Base of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An argument lies outside the domain of the requested function.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// An iterative method did not reach its tolerance within the iteration budget.
class ConvergenceError : public Error {
 public:
  using Error::Error;
};

/// A series could not be truncated with a certified tail bound below the tolerance.
class TruncationError : public Error {
 public:
  using Error::Error;
};

/// The risk model has no positive safety loading, so ruin is certain.
class SolvencyError : public DomainError {
 public:
  using DomainError::DomainError;
};

/// A simulation would need a sequence depth beyond SimConfig::depth.
class DepthError : public Error {
 public:
  using Error::Error;
};

}  // namespace maxmean
