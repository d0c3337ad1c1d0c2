#pragma once

#include <stdexcept>
#include <string>

namespace crawler {

// Base for every failure raised by the library. Solver-side failures derive
// from SolverError so front ends can separate them from bad input.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class InvalidParameter : public Error {
 public:
  using Error::Error;
};

class ContractViolation : public Error {
 public:
  using Error::Error;
};

class SolverError : public Error {
 public:
  using Error::Error;
};

class NoZeroCrossing : public InvalidParameter {
 public:
  using InvalidParameter::InvalidParameter;
};

class OutOfRegime : public InvalidParameter {
 public:
  using InvalidParameter::InvalidParameter;
};

class Divergence : public SolverError {
 public:
  Divergence(const std::string& what, double time)
      : SolverError(what), time_(time) {}
  double time() const { return time_; }

 private:
  double time_;
};

class FrictionDominates : public SolverError {
 public:
  using SolverError::SolverError;
};

class NoPeriodicOrbit : public SolverError {
 public:
  NoPeriodicOrbit(const std::string& what, double residual)
      : SolverError(what), residual_(residual) {}
  double residual() const { return residual_; }

 private:
  double residual_;
};

class DegenerateCycle : public SolverError {
 public:
  using SolverError::SolverError;
};

class ResonantAdjoint : public SolverError {
 public:
  using SolverError::SolverError;
};

class StepSizeError : public SolverError {
 public:
  using SolverError::SolverError;
};

class UndefinedFrequency : public SolverError {
 public:
  using SolverError::SolverError;
};

}  // namespace crawler
