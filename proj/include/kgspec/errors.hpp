#pragma once

#include <stdexcept>
#include <string>

namespace kgspec {

// Base for every failure raised by the library. Each subclass maps to one
// named failure mode so callers (and the CLI) can dispatch on type.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class InvalidArgument : public Error {
 public:
  using Error::Error;
};

// nu <= 0 where xi = sqrt(nu) * rho has to be formed.
class NonPositiveSlope : public Error {
 public:
  using Error::Error;
};

class LambdaMismatch : public Error {
 public:
  using Error::Error;
};

class NoRealSolution : public Error {
 public:
  using Error::Error;
};

class DegenerateDenominator : public Error {
 public:
  using Error::Error;
};

class NoRoots : public Error {
 public:
  using Error::Error;
};

class GridTooCoarse : public Error {
 public:
  using Error::Error;
};

class UndefinedAtZeroFlux : public Error {
 public:
  using Error::Error;
};

class KinkDetected : public Error {
 public:
  using Error::Error;
};

}  // namespace kgspec
