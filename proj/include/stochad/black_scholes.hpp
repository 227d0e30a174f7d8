#pragma once

#include <cstdint>

#include "stochad/random_variable.hpp"
#include "stochad/tape.hpp"

namespace stochad {

struct BlackScholesParams {
  double initial_value = 1.0;  ///< S0
  double rate = 0.05;          ///< r
  double volatility = 0.5;     ///< sigma
  double maturity = 1.0;       ///< T
};

struct DigitalOption {
  double strike = 1.05;   ///< K
  double maturity = 1.0;  ///< T, matches the model maturity in all setups here
};

/// The terminal value S_T = S0 * exp((r - sigma^2/2) T + sigma sqrt(T) Z).
///
/// Draws are produced by a 32-bit Mersenne Twister seeded with `seed`; path
/// i consumes exactly the i-th output word, mapped to a uniform in (0, 1)
/// via u = (word + 0.5) / 2^32 and to a normal via normal_inverse_cdf.
/// The stream is sequential, so results are identical for a given
/// (seed, paths) on any platform and thread count.
RandomVariable generate_terminal(const BlackScholesParams& params, std::size_t paths,
                                 std::uint64_t seed);

/// The S0-independent factor exp((r - sigma^2/2) T + sigma sqrt(T) Z), so
/// that S_T = S0 * factor. Exposed to let several estimators share one set
/// of paths per seed.
RandomVariable terminal_factor(const BlackScholesParams& params, std::size_t paths,
                               std::uint64_t seed);

/// Terminal value recorded on a tape with S0 as a differentiable leaf,
/// so that dS_T/dS0 = S_T/S0 flows through the reverse sweep.
struct TapedTerminal {
  Var initial_value;  ///< the S0 leaf
  Var terminal;       ///< S_T
};

TapedTerminal taped_terminal(Tape& tape, const BlackScholesParams& params,
                             const RandomVariable& factor);
TapedTerminal taped_terminal(Tape& tape, const BlackScholesParams& params, std::size_t paths,
                             std::uint64_t seed);

/// exp(-r T) * Phi(d_minus) with d_minus = (log(S0/K) + (r - sigma^2/2) T) / (sigma sqrt(T)).
double analytic_digital_value(const BlackScholesParams& params, double strike);

/// exp(-r T) * phi(d_minus) / (S0 sigma sqrt(T)).
double analytic_digital_delta(const BlackScholesParams& params, double strike);

/// Density of S_T at level s (lognormal closed form).
double terminal_density(const BlackScholesParams& params, double s);

/// Likelihood-ratio weight for the delta:
/// W = (log(S_T/S0) - (r - sigma^2/2) T) / (S0 sigma^2 T), so that
/// E(payoff * W) estimates d/dS0 E(payoff) without differentiating the
/// payoff.
RandomVariable likelihood_ratio_delta_weight(const BlackScholesParams& params,
                                             const RandomVariable& terminal);

}  // namespace stochad
