#pragma once

#include "stochad/random_variable.hpp"

namespace stochad {

/// How the derivative of a path-wise indicator 1_{X > 0} is replaced when a
/// reverse sweep crosses the indicator node. The true derivative is a delta
/// distribution in X; every variant substitutes a random variable supported
/// on a localization window {|X| < w_eff/2} around the discontinuity:
///
///   DiscretizedDelta      (1/w_eff) * 1_{|X| < w_eff/2}, the classic
///                         finite-width bump (payoff smoothing).
///   Projection            window indicator normalized by the window
///                         probability times the 0-order density estimate;
///                         algebraically identical to DiscretizedDelta and
///                         kept as the explicit projection form.
///   DensityRegression     1_W / E(1_W) * d*(0) with d*(0) regressed from
///                         single-sample density estimates (fit_density).
///   DistributionRegression same, but d*(0) is the slope at 0 of a fit of
///                         the empirical distribution function
///                         (fit_distribution); bounded regressands, lower
///                         variance.
///   LinearConditionalRegression estimates conditional expectations
///                         E(A | X = 0) by local polynomial regression; it
///                         is exposed through
///                         conditional_expectation_estimate and cannot be
///                         injected into a reverse sweep.
///
/// Widths: `width` (w) is by default measured in units of
/// standard_deviation(X) of the trigger; the effective window is
/// {|X| < (w/2) * stddev(X)}. Absolute units are available for the
/// primitives below and via WidthUnits::Absolute. The regression window
/// `regression_width` (w_phi) is always in stddev units: the fit uses
/// samples with 0 < |x| <= (w_phi/2) * stddev(X).
struct IndicatorDiffStrategy {
  enum class Kind {
    DiscretizedDelta,
    Projection,
    LinearConditionalRegression,
    DensityRegression,
    DistributionRegression,
  };
  enum class WidthUnits { StddevOfTrigger, Absolute };

  Kind kind = Kind::DiscretizedDelta;
  double width = 0.05;
  WidthUnits width_units = WidthUnits::StddevOfTrigger;
  double regression_width = 0.5;
  int order = 2;
  /// Replace the regressed density by the windowed count E(1_W)/w_eff. With
  /// Kind::DensityRegression this reproduces DiscretizedDelta bit for bit
  /// (the 0-order recovery); useful for validation.
  bool count_density = false;

  static IndicatorDiffStrategy discretized_delta(double w);
  static IndicatorDiffStrategy projection(double w);
  static IndicatorDiffStrategy linear_conditional_regression(double w, int order = 2);
  static IndicatorDiffStrategy density_regression(double w, double w_phi, int order = 2);
  static IndicatorDiffStrategy distribution_regression(double w, double w_phi, int order = 2);
};

/// (1/w) * 1_{|X| < w/2} with absolute width w. Returns an all-zero value
/// when no path falls inside the window.
RandomVariable discretized_delta(const RandomVariable& x, double width);

/// 1_{|X| < w/2} with absolute width w.
RandomVariable window_indicator(const RandomVariable& x, double width);

/// The effective absolute window width of a strategy on this trigger.
double effective_width(const RandomVariable& x, const IndicatorDiffStrategy& strategy);

/// The density estimate d*(0) of phi_X(0) prescribed by the strategy.
/// DiscretizedDelta / Projection (and count_density = true) use the windowed
/// count (#paths in window)/(n * w_eff); the regression variants fit the
/// empirical density or distribution over the w_phi window.
double density_estimate(const RandomVariable& x, const IndicatorDiffStrategy& strategy);

/// The random variable replacing the indicator derivative in a reverse
/// sweep: 1_W * d*(0) / E(1_W). All variants share this one expression, so
/// algebraic identities between them hold bit for bit. Throws
/// EmptyWindowError when the window is empty (except DiscretizedDelta,
/// which degrades to the zero estimate), and propagates regression errors.
RandomVariable injection(const RandomVariable& x, const IndicatorDiffStrategy& strategy);

/// Localized estimate of E(A | X = 0):
///   Projection (or order 1):  E(1_W A) / E(1_W)
///   order 2:                  explicit windowed least-squares intercept
///   higher order:             localized_least_squares on {1_W x^i}
double conditional_expectation_estimate(const RandomVariable& a, const RandomVariable& x,
                                        const IndicatorDiffStrategy& strategy);

}  // namespace stochad
