#pragma once

#include <stdexcept>

namespace gaugequad {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class InvalidArgument : public Error {
 public:
  using Error::Error;
};

/// An interval or partition that violates its structural invariants.
class InvalidPartition : public Error {
 public:
  using Error::Error;
};

/// A gauge returned a non-positive (or NaN) value.
class InvalidGauge : public Error {
 public:
  using Error::Error;
};

/// Bisection hit its depth limit, or the cell could no longer be split in
/// floating point, before a delta-fine cell was found.
class DepthExceeded : public Error {
 public:
  using Error::Error;
};

/// Partition construction produced more cells than the caller allowed.
class CellLimitExceeded : public Error {
 public:
  using Error::Error;
};

class NonFiniteValue : public Error {
 public:
  using Error::Error;
};

class InvalidTolerance : public Error {
 public:
  using Error::Error;
};

class WitnessNotFound : public Error {
 public:
  using Error::Error;
};

class DomainError : public Error {
 public:
  using Error::Error;
};

class LengthMismatch : public Error {
 public:
  using Error::Error;
};

class IndexBelowQ : public Error {
 public:
  using Error::Error;
};

}  // namespace gaugequad
