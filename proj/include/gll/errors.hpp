#pragma once

#include <stdexcept>
#include <string>

namespace gll {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct InvalidCounts : Error {
  using Error::Error;
};
struct NonQuantizedFlux : Error {
  using Error::Error;
};
struct DimensionMismatch : Error {
  using Error::Error;
};
struct GridMismatch : Error {
  using Error::Error;
};
struct BoxOutOfDomain : Error {
  using Error::Error;
};
struct EigsNotConverged : Error {
  using Error::Error;
};
struct ClusterNotSeparated : Error {
  using Error::Error;
};
struct WrongDegeneracy : Error {
  using Error::Error;
};
struct HypothesisViolated : Error {
  using Error::Error;
};
struct PartitionInvalid : Error {
  using Error::Error;
};
struct NotApplicable : Error {
  using Error::Error;
};
struct IoError : Error {
  using Error::Error;
};

}  // namespace gll
