#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <vector>

#include "stochad/black_scholes.hpp"
#include "stochad/estimators.hpp"
#include "stochad/indicator_diff.hpp"
#include "stochad/kernels.hpp"
#include "stochad/random_variable.hpp"
#include "stochad/tape.hpp"
#include "testutil.hpp"

using namespace stochad;

namespace {

const BlackScholesParams kParams;
const DigitalOption kOption;

double discount() { return std::exp(-kParams.rate * kOption.maturity); }

std::vector<EstimatorSpec> all_specs() {
  return standard_estimators(0.05, 0.5, 2, IndicatorDiffStrategy::Kind::DistributionRegression,
                             EstimatorSpec::FdShiftConvention::HalfWidth);
}

}  // namespace

TEST_CASE("standard estimator set") {
  const std::vector<EstimatorSpec> specs = all_specs();
  REQUIRE(specs.size() == 5);
  CHECK(specs[0].kind == EstimatorSpec::Kind::FiniteDifference);
  CHECK(specs[0].label == "Finite Difference");
  CHECK(specs[0].shift == 0.05);
  CHECK(specs[1].kind == EstimatorSpec::Kind::StochAd);
  CHECK(specs[1].label == "Stoch. AD");
  CHECK(specs[1].strategy.kind == IndicatorDiffStrategy::Kind::DiscretizedDelta);
  CHECK(specs[1].strategy.width == 0.05);
  CHECK(specs[2].kind == EstimatorSpec::Kind::StochAdRegression);
  CHECK(specs[2].label == "Stoch. AD with Regression");
  CHECK(specs[2].strategy.kind == IndicatorDiffStrategy::Kind::DistributionRegression);
  CHECK(specs[2].strategy.regression_width == 0.5);
  CHECK(specs[2].strategy.order == 2);
  CHECK(specs[3].kind == EstimatorSpec::Kind::LikelihoodRatio);
  CHECK(specs[3].label == "Likelihood Ratio");
  CHECK(specs[4].kind == EstimatorSpec::Kind::Analytic);
  CHECK(specs[4].label == "Analytic");

  const std::vector<EstimatorSpec> dens = standard_estimators(
      0.05, 0.75, 3, IndicatorDiffStrategy::Kind::DensityRegression);
  CHECK(dens[2].strategy.kind == IndicatorDiffStrategy::Kind::DensityRegression);
  CHECK(dens[2].strategy.regression_width == 0.75);
  CHECK(dens[2].strategy.order == 3);

  CHECK_THROWS_WITH_AS(
      standard_estimators(0.05, 0.5, 2, IndicatorDiffStrategy::Kind::DiscretizedDelta),
      "standard_estimators: regression kind must be a regression strategy", Error);
}

TEST_CASE("estimates are deterministic in the seed") {
  for (const EstimatorSpec& spec : all_specs()) {
    const double a = estimate_delta(spec, kParams, kOption, 20000, 5);
    const double b = estimate_delta(spec, kParams, kOption, 20000, 5);
    CHECK(a == b);
    if (spec.kind != EstimatorSpec::Kind::Analytic) {
      CHECK(a != estimate_delta(spec, kParams, kOption, 20000, 6));
    }
  }
}

TEST_CASE("estimate_delta draws the shared factor stream") {
  const RandomVariable factor = terminal_factor(kParams, 20000, 5);
  for (const EstimatorSpec& spec : all_specs()) {
    CHECK(estimate_delta(spec, kParams, kOption, 20000, 5) ==
          estimate_delta_on_paths(spec, kParams, kOption, factor));
  }
}

TEST_CASE("analytic estimator ignores the paths") {
  const EstimatorSpec spec = EstimatorSpec::analytic();
  const double exact = analytic_digital_delta(kParams, kOption.strike);
  CHECK(estimate_delta(spec, kParams, kOption, 17, 1) == exact);
  CHECK(estimate_delta(spec, kParams, kOption, 20000, 99) == exact);
}

TEST_CASE("finite difference estimator is the common-random-numbers quotient") {
  const RandomVariable factor = terminal_factor(kParams, 50000, 8);
  const double df = discount();

  SUBCASE("half-width convention in trigger standard deviations") {
    const EstimatorSpec spec = EstimatorSpec::finite_difference(0.05);
    const double scale =
        standard_deviation(kParams.initial_value * factor - kOption.strike);
    const double bump = 0.5 * 0.05 * scale;
    const double up = expectation(
        df * indicator((kParams.initial_value + bump) * factor - kOption.strike));
    const double down = expectation(
        df * indicator((kParams.initial_value - bump) * factor - kOption.strike));
    CHECK(estimate_delta_on_paths(spec, kParams, kOption, factor) ==
          (up - down) / (2.0 * bump));
  }

  SUBCASE("full-width convention doubles the bump") {
    const EstimatorSpec spec = EstimatorSpec::finite_difference(
        0.05, EstimatorSpec::FdShiftConvention::FullWidth);
    const double scale =
        standard_deviation(kParams.initial_value * factor - kOption.strike);
    const double bump = 0.05 * scale;
    const double up = expectation(
        df * indicator((kParams.initial_value + bump) * factor - kOption.strike));
    const double down = expectation(
        df * indicator((kParams.initial_value - bump) * factor - kOption.strike));
    CHECK(estimate_delta_on_paths(spec, kParams, kOption, factor) ==
          (up - down) / (2.0 * bump));
    // A different smoothing width gives a different estimate.
    CHECK(estimate_delta_on_paths(spec, kParams, kOption, factor) !=
          estimate_delta_on_paths(EstimatorSpec::finite_difference(0.05), kParams, kOption,
                                  factor));
  }

  SUBCASE("absolute shift units bypass the trigger scale") {
    EstimatorSpec spec = EstimatorSpec::finite_difference(0.05);
    spec.shift_units = IndicatorDiffStrategy::WidthUnits::Absolute;
    const double bump = 0.5 * 0.05;
    const double up = expectation(
        df * indicator((kParams.initial_value + bump) * factor - kOption.strike));
    const double down = expectation(
        df * indicator((kParams.initial_value - bump) * factor - kOption.strike));
    CHECK(estimate_delta_on_paths(spec, kParams, kOption, factor) ==
          (up - down) / (2.0 * bump));
  }

  SUBCASE("a zero shift is rejected") {
    const EstimatorSpec spec = EstimatorSpec::finite_difference(0.0);
    CHECK_THROWS_WITH_AS(estimate_delta_on_paths(spec, kParams, kOption, factor),
                         "finite_difference: bump size must be positive", Error);
  }
}

TEST_CASE("taped estimator decomposes into df * injection * factor") {
  for (std::uint64_t seed : {3, 4, 5}) {
    const RandomVariable factor = terminal_factor(kParams, 20000, seed);
    const RandomVariable trigger =
        RandomVariable(kParams.initial_value) * factor - kOption.strike;
    for (const EstimatorSpec& spec :
         {EstimatorSpec::stoch_ad(IndicatorDiffStrategy::discretized_delta(0.05)),
          EstimatorSpec::stoch_ad_regression(
              IndicatorDiffStrategy::distribution_regression(0.05, 0.5, 2)),
          EstimatorSpec::stoch_ad_regression(
              IndicatorDiffStrategy::density_regression(0.05, 0.5, 2))}) {
      const double expected = expectation(
          ((RandomVariable(1.0) * RandomVariable(discount())) * injection(trigger, spec.strategy)) *
          factor);
      CHECK(estimate_delta_on_paths(spec, kParams, kOption, factor) == expected);
    }
  }
}

TEST_CASE("likelihood ratio estimator is the weighted payoff expectation") {
  const RandomVariable factor = terminal_factor(kParams, 20000, 9);
  const RandomVariable terminal = kParams.initial_value * factor;
  const RandomVariable payoff = discount() * indicator(terminal - kOption.strike);
  const double expected =
      expectation(payoff * likelihood_ratio_delta_weight(kParams, terminal));
  CHECK(estimate_delta_on_paths(EstimatorSpec::likelihood_ratio(), kParams, kOption, factor) ==
        expected);
}

TEST_CASE("likelihood ratio mean across seeds matches the analytic delta") {
  const std::size_t repeats = 50;
  const EstimatorSpec spec = EstimatorSpec::likelihood_ratio();
  std::vector<double> estimates(repeats);
  for (std::size_t k = 0; k < repeats; ++k) {
    estimates[k] = estimate_delta(spec, kParams, kOption, 20000, 100 + k);
  }
  const RandomVariable sample(estimates);
  const double se = standard_deviation(sample) / std::sqrt(static_cast<double>(repeats));
  CHECK(std::fabs(expectation(sample) - analytic_digital_delta(kParams, kOption.strike)) <
        3.0 * se);
}

TEST_CASE("tape delta of a European call matches common-random-numbers finite differences") {
  const double strike = kOption.strike;
  const double df = discount();
  for (std::uint64_t seed : {1, 2, 3, 4, 5}) {
    const RandomVariable factor = terminal_factor(kParams, 50000, seed);

    Tape tape;
    const TapedTerminal model = taped_terminal(tape, kParams, factor);
    Var payoff = max(model.terminal - strike, 0.0) * df;
    const double ad = tape.derivative_of_expectation(
        payoff.id(), model.initial_value.id(), IndicatorDiffStrategy::discretized_delta(0.05));

    const double h = 1e-4 * kParams.initial_value;
    const auto value = [&](double s0) {
      return expectation(max(RandomVariable(s0) * factor - strike, 0.0) * df);
    };
    const double fd = (value(kParams.initial_value + h) - value(kParams.initial_value - h)) /
                      (2.0 * h);
    CHECK(std::fabs(ad - fd) <= 1e-4 * std::fabs(fd));
  }
}

TEST_CASE("count-pinned regression estimator reproduces the discretized-delta estimator") {
  IndicatorDiffStrategy pinned = IndicatorDiffStrategy::density_regression(0.05, 0.5, 2);
  pinned.count_density = true;
  const EstimatorSpec reg = EstimatorSpec::stoch_ad_regression(pinned);
  const EstimatorSpec ad = EstimatorSpec::stoch_ad(IndicatorDiffStrategy::discretized_delta(0.05));
  for (std::uint64_t seed : {10, 11, 12, 13}) {
    CHECK(estimate_delta(reg, kParams, kOption, 20000, seed) ==
          estimate_delta(ad, kParams, kOption, 20000, seed));
  }
}

TEST_CASE("execution mode does not change any estimate") {
  const kernels::Exec saved = kernels::execution_mode();
  for (const EstimatorSpec& spec : all_specs()) {
    kernels::set_execution_mode(kernels::Exec::Serial);
    const double serial = estimate_delta(spec, kParams, kOption, 30000, 21);
    kernels::set_execution_mode(kernels::Exec::Parallel);
    const double parallel = estimate_delta(spec, kParams, kOption, 30000, 21);
    CHECK(serial == parallel);
  }
  kernels::set_execution_mode(saved);
}

TEST_CASE("estimates land near the analytic delta at moderate sample sizes") {
  // Smoke-level sanity on one seed; the statistical bands live in the
  // acceptance suite. The widest single-seed spread here is the finite
  // difference at 50k paths (about 0.025), so +-0.08 is a loose 3-sigma.
  const double exact = analytic_digital_delta(kParams, kOption.strike);
  for (const EstimatorSpec& spec : all_specs()) {
    const double est = estimate_delta(spec, kParams, kOption, 50000, 40);
    CHECK(std::fabs(est - exact) < 0.08);
  }
}
