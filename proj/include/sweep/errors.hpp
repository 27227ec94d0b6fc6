#ifndef SWEEP_ERRORS_HPP
#define SWEEP_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace sweep {

/// Base class for all library errors.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct NonConvergence : Error {
  using Error::Error;
};
struct InfeasibleSet : Error {
  using Error::Error;
};
struct PointNotInSet : Error {
  using Error::Error;
};
struct UnsupportedPair : Error {
  using Error::Error;
};
struct OutOfDomain : Error {
  using Error::Error;
};
struct DimensionMismatch : Error {
  using Error::Error;
};
struct HorizonMismatch : Error {
  using Error::Error;
};
struct RangeMismatch : Error {
  using Error::Error;
};
struct GridMismatch : Error {
  using Error::Error;
};
struct InvalidInitialState : Error {
  using Error::Error;
};
struct TestFunctionOutsideZ : Error {
  using Error::Error;
};
struct NotContinuousInput : Error {
  using Error::Error;
};
struct JumpyReparametrization : Error {
  using Error::Error;
};
struct ConfigError : Error {
  using Error::Error;
};

}  // namespace sweep

#endif
