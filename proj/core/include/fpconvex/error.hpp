#pragma once

#include <stdexcept>
#include <string>
#include <utility>

#include <Eigen/Core>

namespace fpconvex {

/// Base of every exception thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An argument lies outside the domain of a function (nonpositive density, non-finite potential, ...).
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Invalid construction parameters (grid too small, unsupported combination of kinds).
class ConfigurationError : public Error {
 public:
  using Error::Error;
};

/// A quotient mean hit f'(s) = f'(t) with s != t.
class DegenerateMeanError : public DomainError {
 public:
  using DomainError::DomainError;
};

/// An assembled operator violates one of its structural invariants.
class AssemblyError : public Error {
 public:
  using Error::Error;
};

/// The operation is only valid for a restricted setting (e.g. zero potential).
class ScopeError : public Error {
 public:
  using Error::Error;
};

/// Mismatched operand sizes.
class SizeMismatchError : public Error {
 public:
  using Error::Error;
};

/// Time integration gave up; carries the last accepted state.
class IntegrationError : public Error {
 public:
  IntegrationError(const std::string& what, double last_time, Eigen::VectorXd last_state)
      : Error(what), last_time_(last_time), last_state_(std::move(last_state)) {}

  double last_time() const noexcept { return last_time_; }
  const Eigen::VectorXd& last_state() const noexcept { return last_state_; }

 private:
  double last_time_;
  Eigen::VectorXd last_state_;
};

/// Neither shooting nor action minimization produced a geodesic.
class GeodesicError : public Error {
 public:
  GeodesicError(const std::string& what, double shooting_residual, double minimization_residual)
      : Error(what),
        shooting_residual_(shooting_residual),
        minimization_residual_(minimization_residual) {}

  double shooting_residual() const noexcept { return shooting_residual_; }
  double minimization_residual() const noexcept { return minimization_residual_; }

 private:
  double shooting_residual_;
  double minimization_residual_;
};

}  // namespace fpconvex
