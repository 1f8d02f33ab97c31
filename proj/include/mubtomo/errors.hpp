#pragma once

#include <stdexcept>
#include <string>

namespace mubtomo {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Input outside the supported domain (e.g. a dimension that is not a
// prime power).  CLI exit code 2.
struct DomainError : Error {
  using Error::Error;
};

// Structurally valid input whose numbers are mutually inconsistent
// (e.g. a probability table no physical state can produce).  CLI exit
// code 3.
struct InconsistentDataError : Error {
  using Error::Error;
};

struct DimensionMismatchError : Error {
  using Error::Error;
};

struct NonHermitianError : Error {
  NonHermitianError(const std::string& what, double defect_)
      : Error(what), defect(defect_) {}
  double defect;
};

}  // namespace mubtomo
