#pragma once

#include <stdexcept>
#include <string>

namespace isopar {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Caller violated a documented precondition (shape mismatch, bad size, ...).
class UsageError : public Error {
 public:
  using Error::Error;
};

/// Inversion of a non-unit element or of a matrix with singular reduction.
class NotAUnit : public Error {
 public:
  using Error::Error;
};

/// A lattice is not totally isotropic or not a free direct summand.
class InvalidLattice : public Error {
 public:
  using Error::Error;
};

/// Two computation paths that must agree did not. Always an implementation bug.
class InconsistencyError : public Error {
 public:
  using Error::Error;
};

/// The requested level exceeds the precision the data is known to.
class PrecisionExhausted : public Error {
 public:
  using Error::Error;
};

/// A dimension sequence that cannot come from a torsion profile.
class InconsistentSequence : public Error {
 public:
  using Error::Error;
};

/// Malformed textual input.
class ParseError : public Error {
 public:
  using Error::Error;
};

}  // namespace isopar
