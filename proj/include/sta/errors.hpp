#pragma once

#include <stdexcept>
#include <string>

namespace sta {

// Base for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Argument outside the mathematical domain of an operation (wrong grade,
// grade index out of range, non-spatial rotor, ...).
class DomainError : public Error {
 public:
  using Error::Error;
};

// A value that should satisfy a type invariant does not (e.g. R R~ != 1).
class ContractViolation : public Error {
 public:
  using Error::Error;
};

class DegenerateSpinorError : public Error {
 public:
  using Error::Error;
};

class NotDiracSpinorError : public Error {
 public:
  using Error::Error;
};

class DecompositionError : public Error {
 public:
  using Error::Error;
};

class NonOrthochronousError : public Error {
 public:
  using Error::Error;
};

class NumericalDerivativeError : public Error {
 public:
  using Error::Error;
};

class RangeError : public Error {
 public:
  using Error::Error;
};

class NotCorayError : public Error {
 public:
  NotCorayError(const std::string& what, double residual)
      : Error(what), residual_(residual) {}
  double residual() const noexcept { return residual_; }

 private:
  double residual_;
};

// Raised by trajectory integration; carries the time at which it failed.
class IntegrationError : public Error {
 public:
  IntegrationError(const std::string& what, double t) : Error(what), t_(t) {}
  double time() const noexcept { return t_; }

 private:
  double t_;
};

}  // namespace sta
