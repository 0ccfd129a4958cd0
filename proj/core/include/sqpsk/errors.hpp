#ifndef SQPSK_ERRORS_HPP
#define SQPSK_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace sqpsk {

/// Base class for every error raised by the library. Tools map these to a
/// nonzero "numerical/domain failure" exit status, distinct from usage errors.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

/// The requested (energy, squeezing fraction, purity) combination leaves no
/// energy for the displacement, i.e. alpha^2 would be negative.
class EnergyBudgetExceeded : public Error {
 public:
  using Error::Error;
};

/// Purity outside the admissible interval (1/(1+2N), 1].
class InvalidPurity : public Error {
 public:
  using Error::Error;
};

/// Transmissivity outside (0, 1].
class InvalidTransmissivity : public Error {
 public:
  using Error::Error;
};

/// The Fock cutoff search hit its hard maximum with too much tail mass left.
class CutoffExceeded : public Error {
 public:
  using Error::Error;
};

/// A matrix that should be unitary failed the guard-band check.
class UnitarityGuardFailed : public Error {
 public:
  using Error::Error;
};

/// Two operands have incompatible Fock dimensions.
class DimensionMismatch : public Error {
 public:
  using Error::Error;
};

/// The adaptive phase-average quadrature exhausted every refinement level
/// without meeting its convergence criterion.
class QuadratureNotConverged : public Error {
 public:
  using Error::Error;
};

/// A root solver could not bracket a sign change on its search interval.
class BracketingFailed : public Error {
 public:
  using Error::Error;
};

/// An enumeration-like string (asymptotic kind, figure id, metric, ...) did
/// not match any known value.
class UnknownKind : public Error {
 public:
  using Error::Error;
};

}  // namespace sqpsk

#endif  // SQPSK_ERRORS_HPP
