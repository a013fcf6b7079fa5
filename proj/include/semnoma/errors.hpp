#pragma once

#include <stdexcept>
#include <string>

namespace semnoma {

// Base for every error the library throws.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A model parameter violates its invariants.
class ParameterError : public Error {
 public:
  using Error::Error;
};

// Bad call arguments (empty state sets, zero noise, length mismatches).
class ArgumentError : public Error {
 public:
  using Error::Error;
};

// The requested logistic anchor cannot be reached.
class CalibrationError : public Error {
 public:
  using Error::Error;
};

// The N-user rate target exceeds what silence of the F-user delivers.
class InfeasibleError : public Error {
 public:
  using Error::Error;
};

// Malformed configuration file; the message names the offending key.
class ConfigError : public Error {
 public:
  using Error::Error;
};

}  // namespace semnoma
