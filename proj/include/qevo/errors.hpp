#pragma once

#include <stdexcept>
#include <string>

namespace qevo {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed input: wrong dimension, length mismatch, bad configuration.
class ConfigError : public Error {
 public:
  using Error::Error;
};

/// A numerical procedure cannot produce a meaningful result
/// (degenerate spectrum, chart singularity, undefined azimuth, ...).
class NumericError : public Error {
 public:
  using Error::Error;
};

/// An operation was called on an input violating its documented precondition.
class PreconditionError : public Error {
 public:
  using Error::Error;
};

}  // namespace qevo
