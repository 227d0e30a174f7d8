#pragma once

#include <stdexcept>
#include <string>

namespace stochad {

/// Base class for all errors raised by this library.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

/// The localization window {|X| < w/2} contains no path, so a projection or
/// regression based estimate is undefined for this seed.
class EmptyWindowError : public Error {
 public:
  explicit EmptyWindowError(const std::string& msg) : Error(msg) {}
};

/// Base class for failures of the density / distribution regression.
class RegressionError : public Error {
 public:
  explicit RegressionError(const std::string& msg) : Error(msg) {}
};

/// The normal equations are numerically singular (relative pivot below threshold).
class SingularRegressionError : public RegressionError {
 public:
  explicit SingularRegressionError(const std::string& msg) : RegressionError(msg) {}
};

/// Fewer regression samples than basis functions.
class TooFewSamplesError : public RegressionError {
 public:
  explicit TooFewSamplesError(const std::string& msg) : RegressionError(msg) {}
};

}  // namespace stochad
