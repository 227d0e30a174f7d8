#include "stochad/estimators.hpp"

#include <cmath>
#include <utility>

#include "stochad/errors.hpp"
#include "stochad/tape.hpp"

namespace stochad {

EstimatorSpec EstimatorSpec::finite_difference(double shift, FdShiftConvention convention) {
  EstimatorSpec spec;
  spec.kind = Kind::FiniteDifference;
  spec.label = "Finite Difference";
  spec.shift = shift;
  spec.fd_convention = convention;
  return spec;
}

EstimatorSpec EstimatorSpec::stoch_ad(const IndicatorDiffStrategy& strategy) {
  EstimatorSpec spec;
  spec.kind = Kind::StochAd;
  spec.label = "Stoch. AD";
  spec.strategy = strategy;
  return spec;
}

EstimatorSpec EstimatorSpec::stoch_ad_regression(const IndicatorDiffStrategy& strategy) {
  EstimatorSpec spec;
  spec.kind = Kind::StochAdRegression;
  spec.label = "Stoch. AD with Regression";
  spec.strategy = strategy;
  return spec;
}

EstimatorSpec EstimatorSpec::likelihood_ratio() {
  EstimatorSpec spec;
  spec.kind = Kind::LikelihoodRatio;
  spec.label = "Likelihood Ratio";
  return spec;
}

EstimatorSpec EstimatorSpec::analytic() {
  EstimatorSpec spec;
  spec.kind = Kind::Analytic;
  spec.label = "Analytic";
  return spec;
}

namespace {

double discount_factor(const BlackScholesParams& params, const DigitalOption& option) {
  return std::exp(-params.rate * option.maturity);
}

// Central difference on bumped initial values, same factor on both legs
// (common random numbers). The bump is half the sampled width on each side,
// so up and down trigger levels straddle exactly the localization window.
double finite_difference_delta(const EstimatorSpec& spec, const BlackScholesParams& params,
                               const DigitalOption& option, const RandomVariable& factor) {
  const RandomVariable terminal = params.initial_value * factor;
  double scale = 1.0;
  if (spec.shift_units == IndicatorDiffStrategy::WidthUnits::StddevOfTrigger) {
    scale = standard_deviation(terminal - option.strike);
  }
  const double bump =
      (spec.fd_convention == EstimatorSpec::FdShiftConvention::HalfWidth ? 0.5 : 1.0) *
      spec.shift * scale;
  if (!(bump > 0.0)) throw Error("finite_difference: bump size must be positive");

  const double df = discount_factor(params, option);
  const double up =
      expectation(df * indicator((params.initial_value + bump) * factor - option.strike));
  const double down =
      expectation(df * indicator((params.initial_value - bump) * factor - option.strike));
  return (up - down) / (2.0 * bump);
}

double taped_delta(const EstimatorSpec& spec, const BlackScholesParams& params,
                   const DigitalOption& option, const RandomVariable& factor) {
  Tape tape;
  TapedTerminal model = taped_terminal(tape, params, factor);
  Var payoff = indicator(model.terminal - option.strike) * discount_factor(params, option);
  return tape.derivative_of_expectation(payoff.id(), model.initial_value.id(), spec.strategy);
}

double likelihood_ratio_delta(const BlackScholesParams& params, const DigitalOption& option,
                              const RandomVariable& factor) {
  const RandomVariable terminal = params.initial_value * factor;
  const RandomVariable payoff =
      discount_factor(params, option) * indicator(terminal - option.strike);
  return expectation(payoff * likelihood_ratio_delta_weight(params, terminal));
}

}  // namespace

double estimate_delta_on_paths(const EstimatorSpec& spec, const BlackScholesParams& params,
                               const DigitalOption& option, const RandomVariable& factor) {
  switch (spec.kind) {
    case EstimatorSpec::Kind::FiniteDifference:
      return finite_difference_delta(spec, params, option, factor);
    case EstimatorSpec::Kind::StochAd:
    case EstimatorSpec::Kind::StochAdRegression:
      return taped_delta(spec, params, option, factor);
    case EstimatorSpec::Kind::LikelihoodRatio:
      return likelihood_ratio_delta(params, option, factor);
    case EstimatorSpec::Kind::Analytic:
      return analytic_digital_delta(params, option.strike);
  }
  throw Error("estimate_delta_on_paths: unknown estimator kind");
}

double estimate_delta(const EstimatorSpec& spec, const BlackScholesParams& params,
                      const DigitalOption& option, std::size_t paths, std::uint64_t seed) {
  if (spec.kind == EstimatorSpec::Kind::Analytic) {
    return analytic_digital_delta(params, option.strike);
  }
  return estimate_delta_on_paths(spec, params, option, terminal_factor(params, paths, seed));
}

std::vector<EstimatorSpec> standard_estimators(double w, double w_phi, int order,
                                               IndicatorDiffStrategy::Kind regression_kind,
                                               EstimatorSpec::FdShiftConvention fd_convention) {
  IndicatorDiffStrategy regression;
  switch (regression_kind) {
    case IndicatorDiffStrategy::Kind::DensityRegression:
      regression = IndicatorDiffStrategy::density_regression(w, w_phi, order);
      break;
    case IndicatorDiffStrategy::Kind::DistributionRegression:
      regression = IndicatorDiffStrategy::distribution_regression(w, w_phi, order);
      break;
    default:
      throw Error("standard_estimators: regression kind must be a regression strategy");
  }
  return {
      EstimatorSpec::finite_difference(w, fd_convention),
      EstimatorSpec::stoch_ad(IndicatorDiffStrategy::discretized_delta(w)),
      EstimatorSpec::stoch_ad_regression(regression),
      EstimatorSpec::likelihood_ratio(),
      EstimatorSpec::analytic(),
  };
}

}  // namespace stochad
