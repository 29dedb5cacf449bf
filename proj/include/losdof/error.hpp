#pragma once

#include <stdexcept>
#include <string>

namespace losdof {

// Contract violations on inputs.
class InvalidParameter : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class IndexOutOfRange : public std::out_of_range {
 public:
  using std::out_of_range::out_of_range;
};

class KindMismatch : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class DimensionMismatch : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Numerical failures. These signal a broken computation, never a bad input,
// and the CLI maps all of them to the numerical-check exit code.
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ConvergenceFailure : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

class InconsistentSpectrum : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

class DiscretizationTooCoarse : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

class DecayViolation : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

// Reading or writing files.
class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace losdof
