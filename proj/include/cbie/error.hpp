#pragma once

#include <stdexcept>
#include <string>

namespace cbie {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct DomainError : Error { using Error::Error; };
struct GeometryError : Error { using Error::Error; };
struct ConfigurationError : Error { using Error::Error; };
struct ShapeError : Error { using Error::Error; };
struct DataError : Error { using Error::Error; };
struct NumericError : Error { using Error::Error; };
struct SolverError : NumericError { using NumericError::NumericError; };
struct AssemblyError : NumericError { using NumericError::NumericError; };

struct KernelSingularityError : NumericError {
  double d1, x2, xi2;
  KernelSingularityError(const std::string& what, double d1_, double x2_, double xi2_)
      : NumericError(what), d1(d1_), x2(x2_), xi2(xi2_) {}
};

}  // namespace cbie
