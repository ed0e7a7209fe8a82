#pragma once

#include <stdexcept>
#include <string>

namespace curveflow {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A curvature value (or curve) lies outside the domain an operation requires.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// No nonconstant soliton exists for the requested energy / first integral.
class NoSolitonError : public Error {
 public:
  using Error::Error;
};

/// P(κ) is affine or constant in κ, so its Euler-Lagrange equation carries no
/// curvature information (only geodesics are critical).
class DegenerateEnergy : public NoSolitonError {
 public:
  using NoSolitonError::NoSolitonError;
};

class StiffnessError : public Error {
 public:
  using Error::Error;
};

/// The integrated curvature left the admissible interval.
class DomainExit : public DomainError {
 public:
  using DomainError::DomainError;
};

class SingularEndpoint : public DomainError {
 public:
  using DomainError::DomainError;
};

class DegenerateEdge : public DomainError {
 public:
  using DomainError::DomainError;
};

/// The flow is backward parabolic for the requested (speed law, a).
class BackwardParabolic : public DomainError {
 public:
  using DomainError::DomainError;
};

class SpanExceeded : public DomainError {
 public:
  using DomainError::DomainError;
};

class SupportExceedsCurve : public DomainError {
 public:
  using DomainError::DomainError;
};

class StepTooLarge : public Error {
 public:
  StepTooLarge(const std::string& what, double bound) : Error(what), bound_(bound) {}
  double bound() const noexcept { return bound_; }

 private:
  double bound_;
};

class InsufficientSnapshots : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  using Error::Error;
};

}  // namespace curveflow
