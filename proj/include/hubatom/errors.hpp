#pragma once

#include <stdexcept>
#include <string>

namespace hubatom {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed or invalid model/run configuration.
class ConfigError : public Error {
 public:
  using Error::Error;
};

/// A level label that is not part of the model.
class UnknownLabel : public ConfigError {
 public:
  using ConfigError::ConfigError;
};

/// Arguments outside the domain where a formula is defined or convergent.
class DomainError : public Error {
 public:
  using Error::Error;
};

class ConvergenceError : public Error {
 public:
  using Error::Error;
};

/// The requested truncation drops more weight than the policy allows.
class TruncationError : public Error {
 public:
  using Error::Error;
};

}  // namespace hubatom
