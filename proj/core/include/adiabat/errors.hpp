#ifndef ADIABAT_ERRORS_HPP
#define ADIABAT_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace adiabat {

/// Base class for all errors raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Invalid Hamiltonian specification, grid, or configuration value.
class SpecError : public Error {
 public:
  using Error::Error;
};

/// Evaluation parameter outside the spec's domain.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Instantaneous gap fell below the configured floor.
class DegenerateSpectrum : public Error {
 public:
  DegenerateSpectrum(const std::string& what, double where)
      : Error(what), where_(where) {}
  explicit DegenerateSpectrum(const std::string& what)
      : Error(what), where_(0.0) {}
  /// Grid parameter (time or s) at which degeneracy was detected.
  double where() const noexcept { return where_; }

 private:
  double where_;
};

/// Two traces built on different grids were combined.
class GridMismatch : public Error {
 public:
  using Error::Error;
};

/// An off-diagonal quantity was requested with equal level labels.
class SameLevel : public Error {
 public:
  using Error::Error;
};

/// Observable matrix failed the Hermiticity check.
class NonHermitianObservable : public Error {
 public:
  using Error::Error;
};

/// Target error delta must be strictly positive.
class InvalidDelta : public Error {
 public:
  using Error::Error;
};

/// File could not be opened or written.
class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace adiabat

#endif  // ADIABAT_ERRORS_HPP
