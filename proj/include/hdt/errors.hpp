#pragma once

#include <stdexcept>
#include <string>

namespace hdt {

/// Two vectors (or a vector and an encoder) with incompatible dimensions
/// were combined; they do not live in the same basis.
class DimensionMismatchError : public std::invalid_argument {
 public:
  explicit DimensionMismatchError(const std::string& what)
      : std::invalid_argument(what) {}
};

/// A point outside the encoder's domain was passed where the encoding is
/// undefined (no extrapolation).
class OutOfDomainError : public std::domain_error {
 public:
  explicit OutOfDomainError(const std::string& what) : std::domain_error(what) {}
};

/// Invalid run configuration (bad parameters, malformed input files).
class ConfigError : public std::invalid_argument {
 public:
  explicit ConfigError(const std::string& what) : std::invalid_argument(what) {}
};

/// Numerical failure: non-convergence, degenerate kernels, conditioning.
class NumericalError : public std::runtime_error {
 public:
  explicit NumericalError(const std::string& what) : std::runtime_error(what) {}
};

/// Filesystem failure while reading or writing run outputs.
class IoError : public std::runtime_error {
 public:
  explicit IoError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace hdt
