#pragma once

namespace stochad {

/// Standard normal density.
double normal_pdf(double x);

/// Standard normal cumulative distribution function.
double normal_cdf(double x);

/// Inverse of normal_cdf on (0, 1), accurate to full double precision
/// (Wichura's rational approximations). Used to turn one uniform draw into
/// one normal draw so the path layout of the random stream stays fixed.
double normal_inverse_cdf(double p);

}  // namespace stochad
