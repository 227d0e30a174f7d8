#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "stochad/black_scholes.hpp"
#include "stochad/indicator_diff.hpp"

namespace stochad {

/// One way of estimating the digital-option delta d/dS0 E(e^{-rT} 1_{S_T > K}).
///
///   FiniteDifference  central difference on resimulated values with common
///                     random numbers; by default the bumps are
///                     S0 +- (shift/2) * stddev(S_T - K) so the total sampled
///                     width matches the AD localization width (the
///                     FullWidth convention bumps by +- shift * stddev).
///   StochAd           reverse sweep over the recorded payoff with the
///                     configured indicator strategy (classic discretized
///                     delta by default).
///   StochAdRegression same sweep, regression-based density strategy.
///   LikelihoodRatio   E(payoff * W) with the model score W; no payoff
///                     differentiation, exact up to Monte-Carlo noise.
///   Analytic          closed form, for reference rows.
struct EstimatorSpec {
  enum class Kind {
    FiniteDifference,
    StochAd,
    StochAdRegression,
    LikelihoodRatio,
    Analytic,
  };
  enum class FdShiftConvention { HalfWidth, FullWidth };

  Kind kind = Kind::Analytic;
  std::string label;
  IndicatorDiffStrategy strategy{};  ///< StochAd / StochAdRegression
  double shift = 0.05;               ///< FiniteDifference width parameter
  IndicatorDiffStrategy::WidthUnits shift_units =
      IndicatorDiffStrategy::WidthUnits::StddevOfTrigger;
  FdShiftConvention fd_convention = FdShiftConvention::HalfWidth;

  static EstimatorSpec finite_difference(double shift,
                                         FdShiftConvention convention = FdShiftConvention::HalfWidth);
  static EstimatorSpec stoch_ad(const IndicatorDiffStrategy& strategy);
  static EstimatorSpec stoch_ad_regression(const IndicatorDiffStrategy& strategy);
  static EstimatorSpec likelihood_ratio();
  static EstimatorSpec analytic();
};

/// Delta estimate for one seed. All estimators derive their paths from the
/// same seed, so estimates for equal seeds share paths. Strategy failures
/// (EmptyWindowError, RegressionError) propagate to the caller, which is
/// expected to account for them per seed.
double estimate_delta(const EstimatorSpec& spec, const BlackScholesParams& params,
                      const DigitalOption& option, std::size_t paths, std::uint64_t seed);

/// Same, on an externally generated factor = S_T / S0 (shared paths).
double estimate_delta_on_paths(const EstimatorSpec& spec, const BlackScholesParams& params,
                               const DigitalOption& option, const RandomVariable& factor);

/// The standard comparison set: FiniteDifference, StochAd (discretized
/// delta), StochAdRegression, LikelihoodRatio, Analytic, all sharing the
/// width w; the regression strategy uses the given kind (DensityRegression
/// or DistributionRegression), window w_phi and order m.
std::vector<EstimatorSpec> standard_estimators(
    double w, double w_phi, int order,
    IndicatorDiffStrategy::Kind regression_kind =
        IndicatorDiffStrategy::Kind::DistributionRegression,
    EstimatorSpec::FdShiftConvention fd_convention = EstimatorSpec::FdShiftConvention::HalfWidth);

}  // namespace stochad
