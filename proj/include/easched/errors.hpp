#pragma once

#include <stdexcept>
#include <string>

namespace easched {

// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed instance file: wrong type, missing or unknown field, bad JSON.
class ParseError : public Error {
 public:
  using Error::Error;
};

// Instance parsed but breaks a model invariant.
class ValidationError : public Error {
 public:
  using Error::Error;
};

// Some job cannot complete inside the time grid at any speed.
class HorizonError : public Error {
 public:
  using Error::Error;
};

// The gamma-scaled speed of a job exceeds the fastest available speed.
class SpeedOverflowError : public Error {
 public:
  using Error::Error;
};

// A tabulated energy cost violates the growth condition needed for tardiness.
class GrowthConditionError : public Error {
 public:
  using Error::Error;
};

// Invariant broken inside the pipeline (corrupt LP solution, precedence
// inversion between alpha-intervals, ...). Indicates a bug, not bad input.
class InternalError : public Error {
 public:
  using Error::Error;
};

}  // namespace easched
