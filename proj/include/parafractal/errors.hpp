#pragma once

#include <stdexcept>
#include <string>

namespace parafractal {

/// Base class for all library errors so callers can catch one type.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct AlphaOutOfRange : Error {
  using Error::Error;
};
struct LevelTooShallow : Error {
  using Error::Error;
};
struct EmptyInput : Error {
  using Error::Error;
};
struct UnequalRadii : Error {
  using Error::Error;
};
struct NonpositiveFactor : Error {
  using Error::Error;
};
struct EmptyCloud : Error {
  using Error::Error;
};
struct NonpositiveDelta : Error {
  using Error::Error;
};
struct WindowTooSmall : Error {
  using Error::Error;
};
struct NonpositiveAlpha : Error {
  using Error::Error;
};
struct FormatError : Error {
  using Error::Error;
};
struct IncompleteData : Error {
  using Error::Error;
};
struct SingularSample : Error {
  using Error::Error;
};
struct NonpositiveLambda : Error {
  using Error::Error;
};
struct GridTooCoarse : Error {
  using Error::Error;
};
struct OutOfDomain : Error {
  using Error::Error;
};
struct BadExponent : Error {
  using Error::Error;
};
struct RhoTooLarge : Error {
  using Error::Error;
};
struct BadCutoff : Error {
  using Error::Error;
};
struct UnknownGenerator : Error {
  using Error::Error;
};
struct IoError : Error {
  using Error::Error;
};

}  // namespace parafractal
