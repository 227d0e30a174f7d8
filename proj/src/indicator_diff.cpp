#include "stochad/indicator_diff.hpp"

#include <cmath>
#include <string>
#include <vector>

#include "stochad/kernels.hpp"
#include "stochad/regression.hpp"

namespace stochad {

namespace {

using Kind = IndicatorDiffStrategy::Kind;

RandomVariable window_mask(const RandomVariable& x, double half_width) {
  std::vector<double> out(x.size());
  kernels::window_indicator(x.samples(), half_width, out, kernels::execution_mode());
  return RandomVariable(std::move(out));
}

std::size_t window_count(const RandomVariable& x, double half_width) {
  return kernels::count_in_window(x.samples(), half_width, kernels::execution_mode());
}

double regression_half_width(const RandomVariable& x, const IndicatorDiffStrategy& s) {
  return 0.5 * s.regression_width * standard_deviation(x);
}

}  // namespace

IndicatorDiffStrategy IndicatorDiffStrategy::discretized_delta(double w) {
  IndicatorDiffStrategy s;
  s.kind = Kind::DiscretizedDelta;
  s.width = w;
  return s;
}

IndicatorDiffStrategy IndicatorDiffStrategy::projection(double w) {
  IndicatorDiffStrategy s;
  s.kind = Kind::Projection;
  s.width = w;
  return s;
}

IndicatorDiffStrategy IndicatorDiffStrategy::linear_conditional_regression(double w, int order) {
  IndicatorDiffStrategy s;
  s.kind = Kind::LinearConditionalRegression;
  s.width = w;
  s.order = order;
  return s;
}

IndicatorDiffStrategy IndicatorDiffStrategy::density_regression(double w, double w_phi,
                                                                int order) {
  IndicatorDiffStrategy s;
  s.kind = Kind::DensityRegression;
  s.width = w;
  s.regression_width = w_phi;
  s.order = order;
  return s;
}

IndicatorDiffStrategy IndicatorDiffStrategy::distribution_regression(double w, double w_phi,
                                                                     int order) {
  IndicatorDiffStrategy s;
  s.kind = Kind::DistributionRegression;
  s.width = w;
  s.regression_width = w_phi;
  s.order = order;
  return s;
}

RandomVariable discretized_delta(const RandomVariable& x, double width) {
  if (!(width > 0.0)) throw Error("discretized_delta: width must be positive");
  if (x.deterministic()) throw Error("discretized_delta: trigger must be sampled");
  if (window_count(x, 0.5 * width) == 0) return RandomVariable(0.0);
  return window_mask(x, 0.5 * width) * (1.0 / width);
}

RandomVariable window_indicator(const RandomVariable& x, double width) {
  if (!(width > 0.0)) throw Error("window_indicator: width must be positive");
  if (x.deterministic()) throw Error("window_indicator: trigger must be sampled");
  return window_mask(x, 0.5 * width);
}

double effective_width(const RandomVariable& x, const IndicatorDiffStrategy& s) {
  if (!(s.width > 0.0)) throw Error("indicator strategy: width must be positive");
  if (s.width_units == IndicatorDiffStrategy::WidthUnits::Absolute) return s.width;
  return s.width * standard_deviation(x);
}

double density_estimate(const RandomVariable& x, const IndicatorDiffStrategy& s) {
  const double w_eff = effective_width(x, s);
  const bool counted = s.count_density || s.kind == Kind::DiscretizedDelta ||
                       s.kind == Kind::Projection;
  if (counted) {
    const std::size_t k = window_count(x, 0.5 * w_eff);
    const double p = static_cast<double>(k) / static_cast<double>(x.size());
    return p / w_eff;
  }
  const double r = regression_half_width(x, s);
  switch (s.kind) {
    case Kind::DensityRegression:
      return fit_density(empirical_density_samples(x, r), s.order);
    case Kind::DistributionRegression:
      return fit_distribution(x, r, s.order);
    default:
      throw Error("density_estimate: strategy provides no density estimate");
  }
}

RandomVariable injection(const RandomVariable& x, const IndicatorDiffStrategy& s) {
  if (s.kind == Kind::LinearConditionalRegression)
    throw Error(
        "injection: LinearConditionalRegression estimates conditional expectations and cannot "
        "replace the indicator derivative; use conditional_expectation_estimate");
  if (x.deterministic()) throw Error("injection: trigger must be sampled");
  const double w_eff = effective_width(x, s);
  const std::size_t k = window_count(x, 0.5 * w_eff);
  if (k == 0) {
    // The discretized estimator is simply zero on an empty window; the
    // normalized variants are 0/0 and therefore undefined for this seed.
    if (s.kind == Kind::DiscretizedDelta) return RandomVariable(0.0);
    throw EmptyWindowError("injection: no path inside the window {|X| < " +
                           std::to_string(0.5 * w_eff) + "}");
  }
  const double p = static_cast<double>(k) / static_cast<double>(x.size());
  const double d0 = density_estimate(x, s);
  // One shared expression for every variant: with the windowed-count density
  // d0 = p / w_eff this is exactly the discretized delta, so the 0-order
  // recovery holds bit for bit.
  return window_mask(x, 0.5 * w_eff) * (d0 / p);
}

double conditional_expectation_estimate(const RandomVariable& a, const RandomVariable& x,
                                        const IndicatorDiffStrategy& s) {
  if (x.deterministic()) throw Error("conditional_expectation_estimate: trigger must be sampled");
  const double w_eff = effective_width(x, s);
  const std::size_t k = window_count(x, 0.5 * w_eff);
  if (k == 0)
    throw EmptyWindowError("conditional_expectation_estimate: no path inside the window");

  const RandomVariable mask = window_mask(x, 0.5 * w_eff);
  const bool projection = s.kind == Kind::Projection ||
                          (s.kind == Kind::LinearConditionalRegression && s.order == 1);
  if (projection) return expectation(mask * a) / expectation(mask);

  if (s.kind != Kind::LinearConditionalRegression)
    throw Error("conditional_expectation_estimate: use Projection or "
                "LinearConditionalRegression");

  if (s.order == 2) {
    // Windowed least-squares intercept on the basis {1_W, 1_W X}, written in
    // moments of the localized variables Xt = 1_W X, At = 1_W A.
    const RandomVariable xt = mask * x;
    const RandomVariable at = mask * a;
    const double p = expectation(mask);
    const double ex = expectation(xt);
    const double exx = expectation(xt * xt);
    const double ea = expectation(at);
    const double eax = expectation(at * xt);
    const double den = p * exx - ex * ex;
    const double scale = p * exx > ex * ex ? p * exx : ex * ex;
    if (!(std::fabs(den) > 1e-12 * scale))
      throw SingularRegressionError(
          "conditional_expectation_estimate: degenerate trigger in window");
    return (exx * ea - ex * eax) / den;
  }

  RegressionBasis basis;
  basis.kind = RegressionBasis::Kind::Density;
  basis.order = s.order;
  basis.half_width = 0.5 * w_eff;
  return localized_least_squares(a, x, basis)[0];
}

}  // namespace stochad
