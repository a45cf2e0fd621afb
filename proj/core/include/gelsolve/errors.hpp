#pragma once

#include <stdexcept>
#include <string>

namespace gelsolve {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An argument lies outside the domain of the operation (x outside [0,1], t <= T_gel, ...).
class DomainError : public Error {
 public:
  using Error::Error;
};

/// The model is not defined for the supplied initial data (Flory with infinite mass, ...).
class ModelError : public Error {
 public:
  using Error::Error;
};

/// A root finder or integrator failed to meet its tolerance.
class SolverError : public Error {
 public:
  using Error::Error;
};

/// The truncated kinetic system produced a negative concentration beyond tolerance.
class InstabilityError : public SolverError {
 public:
  using SolverError::SolverError;
};

/// Mismatched inputs to a comparison or reporting routine.
class UsageError : public Error {
 public:
  using Error::Error;
};

/// Malformed or inconsistent run configuration.
class ConfigError : public Error {
 public:
  using Error::Error;
};

}  // namespace gelsolve
