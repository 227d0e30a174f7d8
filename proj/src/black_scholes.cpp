#include "stochad/black_scholes.hpp"

#include <cmath>
#include <random>
#include <vector>

#include "stochad/normal.hpp"

namespace stochad {

namespace {

void check_params(const BlackScholesParams& p) {
  if (!(p.initial_value > 0.0)) throw Error("black-scholes: S0 must be positive");
  if (!(p.volatility > 0.0)) throw Error("black-scholes: volatility must be positive");
  if (!(p.maturity > 0.0)) throw Error("black-scholes: maturity must be positive");
}

}  // namespace

RandomVariable terminal_factor(const BlackScholesParams& params, std::size_t paths,
                               std::uint64_t seed) {
  check_params(params);
  if (paths == 0) throw Error("black-scholes: need at least one path");
  const double drift =
      (params.rate - 0.5 * params.volatility * params.volatility) * params.maturity;
  const double vol_sqrt_t = params.volatility * std::sqrt(params.maturity);

  std::mt19937 rng(static_cast<std::mt19937::result_type>(seed));
  std::vector<double> out(paths);
  constexpr double kTwoPow32 = 4294967296.0;
  for (std::size_t i = 0; i < paths; ++i) {
    const double u = (static_cast<double>(rng()) + 0.5) / kTwoPow32;  // in (0, 1)
    out[i] = std::exp(drift + vol_sqrt_t * normal_inverse_cdf(u));
  }
  return RandomVariable(std::move(out));
}

RandomVariable generate_terminal(const BlackScholesParams& params, std::size_t paths,
                                 std::uint64_t seed) {
  return terminal_factor(params, paths, seed) * params.initial_value;
}

TapedTerminal taped_terminal(Tape& tape, const BlackScholesParams& params,
                             const RandomVariable& factor) {
  check_params(params);
  Var s0 = tape.leaf(params.initial_value);
  Var f = tape.leaf(factor);
  return TapedTerminal{s0, s0 * f};
}

TapedTerminal taped_terminal(Tape& tape, const BlackScholesParams& params, std::size_t paths,
                             std::uint64_t seed) {
  return taped_terminal(tape, params, terminal_factor(params, paths, seed));
}

namespace {

double d_minus(const BlackScholesParams& p, double strike) {
  if (!(strike > 0.0)) throw Error("black-scholes: strike must be positive");
  const double vol_sqrt_t = p.volatility * std::sqrt(p.maturity);
  return (std::log(p.initial_value / strike) +
          (p.rate - 0.5 * p.volatility * p.volatility) * p.maturity) /
         vol_sqrt_t;
}

}  // namespace

double analytic_digital_value(const BlackScholesParams& params, double strike) {
  check_params(params);
  return std::exp(-params.rate * params.maturity) * normal_cdf(d_minus(params, strike));
}

double analytic_digital_delta(const BlackScholesParams& params, double strike) {
  check_params(params);
  const double vol_sqrt_t = params.volatility * std::sqrt(params.maturity);
  return std::exp(-params.rate * params.maturity) * normal_pdf(d_minus(params, strike)) /
         (params.initial_value * vol_sqrt_t);
}

double terminal_density(const BlackScholesParams& params, double s) {
  check_params(params);
  if (!(s > 0.0)) return 0.0;
  const double vol_sqrt_t = params.volatility * std::sqrt(params.maturity);
  const double mu = std::log(params.initial_value) +
                    (params.rate - 0.5 * params.volatility * params.volatility) * params.maturity;
  const double z = (std::log(s) - mu) / vol_sqrt_t;
  return normal_pdf(z) / (s * vol_sqrt_t);
}

RandomVariable likelihood_ratio_delta_weight(const BlackScholesParams& params,
                                             const RandomVariable& terminal) {
  check_params(params);
  const double drift =
      (params.rate - 0.5 * params.volatility * params.volatility) * params.maturity;
  const double denom =
      params.initial_value * params.volatility * params.volatility * params.maturity;
  return (log(terminal / params.initial_value) - drift) / denom;
}

}  // namespace stochad
