// Error types shared by the field, geometry and simulation layers.
#pragma once

#include <stdexcept>
#include <string>

namespace isotrack {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// The spatial gradient vanished (or nearly so) where a Frenet frame was needed.
struct CriticalPointError : Error {
  using Error::Error;
};

/// Root bracketing for a displaced-isoline intersection failed.
struct NoIntersectionError : Error {
  using Error::Error;
};

/// The isoline sweeps faster than the vehicle can travel.
struct FrontTooFastError : Error {
  using Error::Error;
};

/// A commanded turn rate exceeded the configured bound.
struct TurnRateError : Error {
  using Error::Error;
};

/// A field was evaluated outside its domain of smoothness.
struct FieldDomainError : Error {
  using Error::Error;
};

/// The requested level exceeds the guaranteed field maximum.
struct NonsensicalLevelError : Error {
  using Error::Error;
};

/// The requested level is not attained by the field profile.
struct LevelOutOfRangeError : Error {
  using Error::Error;
};

/// Run configuration is malformed or incomplete.
struct ConfigError : Error {
  using Error::Error;
};

/// Scenario construction failed (inconsistent bounds, bad initial state, ...).
struct BuildError : Error {
  using Error::Error;
};

}  // namespace isotrack
