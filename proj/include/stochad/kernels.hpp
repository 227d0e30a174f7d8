#pragma once

#include <cstddef>
#include <span>

// Low level array kernels. Every kernel exists in a serial and an OpenMP
// variant selected by the Exec argument; both variants are bitwise identical:
//
//  - elementwise maps compute each output element independently, so the
//    schedule cannot change the result;
//  - reductions use a fixed block decomposition (kSumBlock elements per
//    block). Block partials are accumulated serially inside each block and
//    combined serially in block order, so the result does not depend on the
//    thread count.
//
// Kernels returning std::size_t report the smallest offending index of a
// domain violation (kNoIndex when the input is clean). The caller decides
// how to report the error; the index is deterministic because it is reduced
// with min.

namespace stochad::kernels {

enum class Exec { Serial, Parallel };

inline constexpr std::size_t kNoIndex = static_cast<std::size_t>(-1);
inline constexpr std::size_t kSumBlock = 4096;

/// Global execution mode used by RandomVariable arithmetic. Defaults to
/// Parallel (which falls back to serial loops below a size threshold and
/// when OpenMP is not available).
Exec execution_mode();
void set_execution_mode(Exec mode);
int thread_count();

// Elementwise binary kernels.
void add(std::span<const double> x, std::span<const double> y, std::span<double> out, Exec mode);
void add_scalar(std::span<const double> x, double c, std::span<double> out, Exec mode);
void subtract(std::span<const double> x, std::span<const double> y, std::span<double> out, Exec mode);
void subtract_scalar(std::span<const double> x, double c, std::span<double> out, Exec mode);
void scalar_subtract(double c, std::span<const double> x, std::span<double> out, Exec mode);
void multiply(std::span<const double> x, std::span<const double> y, std::span<double> out, Exec mode);
void multiply_scalar(std::span<const double> x, double c, std::span<double> out, Exec mode);
void maximum(std::span<const double> x, std::span<const double> y, std::span<double> out, Exec mode);
void maximum_scalar(std::span<const double> x, double c, std::span<double> out, Exec mode);

/// out = x / y. Returns the first index with y == 0, or kNoIndex.
std::size_t divide(std::span<const double> x, std::span<const double> y, std::span<double> out, Exec mode);
void divide_scalar(std::span<const double> x, double c, std::span<double> out, Exec mode);
/// out = c / x. Returns the first index with x == 0, or kNoIndex.
std::size_t scalar_divide(double c, std::span<const double> x, std::span<double> out, Exec mode);

// Elementwise unary kernels.
void negate(std::span<const double> x, std::span<double> out, Exec mode);
/// Returns the first index where exp overflows to infinity, or kNoIndex.
std::size_t exponential(std::span<const double> x, std::span<double> out, Exec mode);
/// Returns the first index with x <= 0, or kNoIndex.
std::size_t logarithm(std::span<const double> x, std::span<double> out, Exec mode);
/// Returns the first index with x < 0, or kNoIndex.
std::size_t square_root(std::span<const double> x, std::span<double> out, Exec mode);
/// out[i] = 1.0 if x[i] > 0 else 0.0 (ties at zero map to 0).
void indicator_positive(std::span<const double> x, std::span<double> out, Exec mode);
/// out[i] = 1.0 if |x[i]| < half_width else 0.0 (strict inequality).
void window_indicator(std::span<const double> x, double half_width, std::span<double> out, Exec mode);

// Deterministic reductions.
double sum(std::span<const double> x, Exec mode);
double dot(std::span<const double> x, std::span<const double> y, Exec mode);
/// Number of indices with |x[i]| < half_width (strict). Integer reduction,
/// order independent.
std::size_t count_in_window(std::span<const double> x, double half_width, Exec mode);

}  // namespace stochad::kernels
