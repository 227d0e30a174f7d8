#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "stochad/random_variable.hpp"

namespace stochad {

/// Point cloud (x_i, d~(x_i)) of single-sample density estimates built from
/// the paths of a trigger X, restricted to 0 < |x_i| <= half_width.
///
/// For x > 0 the estimate is  d~(x) = #{j : X_j in [0, x]} / (n x);
/// for x < 0 it counts [x, 0] and divides by n |x|, so d~ >= 0 on both
/// sides. The interval is closed, hence each sample counts itself and
/// d~(x_i) >= 1/(n |x_i|); points pile up on a 1/|x| branch near zero,
/// which is expected and handled by the regression, not filtered out.
/// Points are listed in path order.
struct DensitySamples {
  std::vector<double> x;
  std::vector<double> y;
  double half_width = 0.0;
  std::size_t paths = 0;  ///< n of the originating trigger
};

DensitySamples empirical_density_samples(const RandomVariable& x, double half_width);

/// Least-squares fit of y on the polynomial basis {1, x, ..., x^(order-1)}
/// over the points of a DensitySamples cloud. Returns the intercept, the
/// density estimate d*(0).
///
/// Throws TooFewSamplesError when there are fewer points than basis
/// functions and SingularRegressionError when the normal equations are
/// numerically singular.
double fit_density(const DensitySamples& samples, int order);

/// Regression on the empirical distribution function instead of the density:
/// samples (x_i, D(x_i)) with D(x) = #{j : X_j in [0, x]}/n for x > 0 and
/// the negative count of [x, 0] for x < 0 (D is odd, D(0) = 0), fitted on
/// the basis {x, x^2, ..., x^order} without a constant term. Returns the
/// coefficient of x, the density estimate d*(0). Same errors as fit_density.
double fit_distribution(const RandomVariable& x, double half_width, int order);

/// Basis selector for path-level localized least squares.
///   Density:      1_{|x| < half_width} * x^i,  i = 0..order-1
///   Distribution: 1_{|x| < half_width} * x^i,  i = 1..order
struct RegressionBasis {
  enum class Kind { Density, Distribution };
  Kind kind = Kind::Density;
  int order = 2;
  double half_width = 0.0;
};

/// Solves min ||B c - Y||_2 over paths, where column j of B is the j-th
/// basis function evaluated on X. Paths outside the window contribute zero
/// rows, which is equivalent to restricting the fit to the window. Returns
/// the coefficient vector in basis order.
std::vector<double> localized_least_squares(const RandomVariable& y, const RandomVariable& x,
                                            const RegressionBasis& basis);

/// Least-squares fit of points (x_i, y_i) on {x^first_power, ...,
/// x^(first_power+terms-1)}. Shared by fit_density and fit_distribution,
/// exposed for direct use in diagnostics.
std::vector<double> fit_polynomial(std::span<const double> x, std::span<const double> y,
                                   int first_power, int terms);

/// Evaluates sum_j coeffs[j] * x^(first_power+j).
double evaluate_polynomial(std::span<const double> coeffs, int first_power, double x);

}  // namespace stochad
