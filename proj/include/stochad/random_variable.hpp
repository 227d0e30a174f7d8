#pragma once

#include <memory>
#include <span>
#include <vector>

#include "stochad/errors.hpp"

namespace stochad {

/// A random variable sampled on n Monte-Carlo paths, or a deterministic
/// value broadcast to any path count.
///
/// Values are immutable after construction; copies share the sample storage
/// and are safe to hand across threads. Arithmetic between two sampled
/// variables requires equal path counts, a deterministic operand broadcasts.
/// expectation() and variance() reduce in a fixed blocked order, so results
/// are bitwise reproducible for a given sample vector regardless of the
/// execution mode (see kernels.hpp).
class RandomVariable {
 public:
  /// Deterministic zero.
  RandomVariable() = default;

  /// Deterministic (broadcast) value.
  explicit RandomVariable(double value) : value_(value) {}

  /// Sampled value; the vector must not be empty.
  explicit RandomVariable(std::vector<double> samples);

  bool deterministic() const { return data_ == nullptr; }

  /// Number of paths; 0 for a deterministic value.
  std::size_t size() const { return data_ ? data_->size() : 0; }

  /// The broadcast value. Requires deterministic().
  double scalar() const;

  /// The sample vector. Requires !deterministic().
  std::span<const double> samples() const;

  /// Sample at path i, broadcast aware.
  double operator[](std::size_t i) const { return data_ ? (*data_)[i] : value_; }

 private:
  std::shared_ptr<const std::vector<double>> data_;
  double value_ = 0.0;
};

RandomVariable operator+(const RandomVariable& x, const RandomVariable& y);
RandomVariable operator+(const RandomVariable& x, double c);
RandomVariable operator+(double c, const RandomVariable& x);
RandomVariable operator-(const RandomVariable& x, const RandomVariable& y);
RandomVariable operator-(const RandomVariable& x, double c);
RandomVariable operator-(double c, const RandomVariable& x);
RandomVariable operator-(const RandomVariable& x);
RandomVariable operator*(const RandomVariable& x, const RandomVariable& y);
RandomVariable operator*(const RandomVariable& x, double c);
RandomVariable operator*(double c, const RandomVariable& x);
RandomVariable operator/(const RandomVariable& x, const RandomVariable& y);
RandomVariable operator/(const RandomVariable& x, double c);
RandomVariable operator/(double c, const RandomVariable& x);

RandomVariable exp(const RandomVariable& x);
RandomVariable log(const RandomVariable& x);
RandomVariable sqrt(const RandomVariable& x);
RandomVariable max(const RandomVariable& x, const RandomVariable& y);
RandomVariable max(const RandomVariable& x, double c);
RandomVariable max(double c, const RandomVariable& x);

/// Path-wise 1 if x > 0 else 0. The tie x == 0 maps to 0.
RandomVariable indicator(const RandomVariable& x);

/// Equal-weight mean over paths (the broadcast value when deterministic).
double expectation(const RandomVariable& x);

/// Population variance E(X^2) - E(X)^2. Requires at least two samples.
double variance(const RandomVariable& x);

/// sqrt(variance(x)).
double standard_deviation(const RandomVariable& x);

}  // namespace stochad
