#pragma once

#include <stdexcept>
#include <string>

namespace ecs {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Mode-count or settings-length mismatch.
class DimensionError : public Error {
 public:
  using Error::Error;
};

/// A state whose norm is (numerically) zero was used where a physical state is required.
class DegenerateStateError : public Error {
 public:
  using Error::Error;
};

/// An element or observable met a ket factor of the wrong kind (Fock vs coherent).
class UnsupportedKindError : public Error {
 public:
  using Error::Error;
};

/// Fock photon number above the configured cap.
class PhotonCapError : public Error {
 public:
  using Error::Error;
};

/// Closed form evaluated at a point where its normalization is singular.
class SingularNormalizationError : public Error {
 public:
  using Error::Error;
};

/// Truncated Fock basis too small for the amplitudes involved.
class TruncationError : public Error {
 public:
  using Error::Error;
};

/// Root search called without a sign change in the bracket.
class BracketError : public Error {
 public:
  using Error::Error;
};

/// Objective returned NaN or Inf.
class ObjectiveError : public Error {
 public:
  using Error::Error;
};

/// Malformed text input (state dumps, circuit files).
class ParseError : public Error {
 public:
  using Error::Error;
};

}  // namespace ecs
