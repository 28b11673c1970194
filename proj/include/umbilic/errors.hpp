#pragma once

#include <stdexcept>
#include <string>

namespace umbilic {

// Root of the library's exception hierarchy. The CLI maps the subclasses
// onto exit codes (ConfigError -> 2, NumericalError family -> 3).
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Precondition violated by the caller (zero constant term, vanishing
// automorphism denominator, t outside the admissible range, ...).
class DomainError : public Error {
 public:
  using Error::Error;
};

class ConfigError : public Error {
 public:
  using Error::Error;
};

// Model file rejected by the loader; carries the offending line.
class ModelFormatError : public ConfigError {
 public:
  ModelFormatError(int line, const std::string& what)
      : ConfigError("line " + std::to_string(line) + ": " + what), line_(line) {}
  int line() const noexcept { return line_; }

 private:
  int line_;
};

class NumericalError : public Error {
 public:
  using Error::Error;
};

class SolverError : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

class SingularSegreError : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

class MappingError : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

class DegenerateWeightError : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

class InconsistencyError : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

class AccuracyError : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

class StructuralError : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

class EstimationError : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

// The moment test and the Cauchy-transform probes disagreed.
class OracleMismatch : public Error {
 public:
  using Error::Error;
};

}  // namespace umbilic
