#pragma once

#include <stdexcept>
#include <string>

namespace chowlift {

// Base class for every domain error raised by the workbench.
class ChowError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Two values that should live on the same ambient datum do not.
class AmbientMismatchError : public ChowError {
 public:
  using ChowError::ChowError;
};

// An operation needs structure (strong Kunneth data, cellular flag, ...)
// the datum does not carry.
class UnsupportedDatumError : public ChowError {
 public:
  using ChowError::ChowError;
};

// A group action datum violates its invariants.
class InvalidActionError : public ChowError {
 public:
  using ChowError::ChowError;
};

// Blow-up center is not a degree-1 point class.
class InvalidCenterError : public ChowError {
 public:
  using ChowError::ChowError;
};

// Exceptional self-intersection multiplier is zero.
class DegenerateMultiplierError : public ChowError {
 public:
  using ChowError::ChowError;
};

// A correspondence expected to lie in the exceptional ideal B does not.
class NotInBError : public ChowError {
 public:
  using ChowError::ChowError;
};

// A tau pair fails to reconstruct its sigma.
class InconsistentTauError : public ChowError {
 public:
  using ChowError::ChowError;
};

// An algebraic identity that must hold for valid inputs failed; signals the
// input was not what the construction assumes.
class ConstructionViolationError : public ChowError {
 public:
  using ChowError::ChowError;
};

// Configuration parse or semantic error.
class ConfigError : public ChowError {
 public:
  using ChowError::ChowError;
};

}  // namespace chowlift
