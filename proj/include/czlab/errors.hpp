#pragma once

#include <stdexcept>
#include <string>

namespace czlab {

/// Base of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A point, radius or region lies outside where the data lives.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Parameters violate a documented precondition.
class ValidationError : public Error {
 public:
  using Error::Error;
};

/// A requested length scale is below the grid resolution.
class ResolutionError : public Error {
 public:
  using Error::Error;
};

/// Linear-mode assembly did not produce a symmetric positive definite system.
class AssemblyError : public Error {
 public:
  using Error::Error;
};

/// A postcondition or caller contract was broken.
class ContractError : public Error {
 public:
  using Error::Error;
};

/// The exit-ball search ran out of admissible radii.
class GeometryExhausted : public Error {
 public:
  using Error::Error;
};

/// A calibration constant is too small to admit any answer.
class CalibrationError : public Error {
 public:
  using Error::Error;
};

/// An iterative solve hit its iteration cap before reaching tolerance.
class ConvergenceError : public Error {
 public:
  using Error::Error;
};

class ScheduleError : public Error {
 public:
  using Error::Error;
};

class FitError : public Error {
 public:
  using Error::Error;
};

class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace czlab
