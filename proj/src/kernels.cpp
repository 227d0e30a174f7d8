#include "stochad/kernels.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdint>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace stochad::kernels {

namespace {

std::atomic<Exec> g_mode{Exec::Parallel};

// Below this size the parallel variant runs the serial loop; spawning a team
// costs more than the work saved. Dispatch never changes results, only speed.
constexpr std::ptrdiff_t kParallelThreshold = 1 << 13;

bool run_parallel([[maybe_unused]] std::ptrdiff_t n, [[maybe_unused]] Exec mode) {
#ifdef _OPENMP
  return mode == Exec::Parallel && n >= kParallelThreshold;
#else
  return false;
#endif
}

template <class F>
void map(std::span<const double> x, std::span<double> out, Exec mode, F f) {
  const std::ptrdiff_t n = static_cast<std::ptrdiff_t>(x.size());
  if (run_parallel(n, mode)) {
#ifdef _OPENMP
#pragma omp parallel for schedule(static)
#endif
    for (std::ptrdiff_t i = 0; i < n; ++i) out[i] = f(x[i]);
  } else {
    for (std::ptrdiff_t i = 0; i < n; ++i) out[i] = f(x[i]);
  }
}

template <class F>
void map2(std::span<const double> x, std::span<const double> y, std::span<double> out, Exec mode,
          F f) {
  const std::ptrdiff_t n = static_cast<std::ptrdiff_t>(x.size());
  if (run_parallel(n, mode)) {
#ifdef _OPENMP
#pragma omp parallel for schedule(static)
#endif
    for (std::ptrdiff_t i = 0; i < n; ++i) out[i] = f(x[i], y[i]);
  } else {
    for (std::ptrdiff_t i = 0; i < n; ++i) out[i] = f(x[i], y[i]);
  }
}

// Map that also reports the smallest index failing a domain predicate.
template <class F, class Bad>
std::size_t map_checked(std::span<const double> x, std::span<double> out, Exec mode, F f, Bad bad) {
  const std::ptrdiff_t n = static_cast<std::ptrdiff_t>(x.size());
  std::size_t worst = kNoIndex;
  if (run_parallel(n, mode)) {
#ifdef _OPENMP
#pragma omp parallel for schedule(static) reduction(min : worst)
#endif
    for (std::ptrdiff_t i = 0; i < n; ++i) {
      const double v = f(x[i]);
      out[i] = v;
      if (bad(x[i], v)) worst = std::min(worst, static_cast<std::size_t>(i));
    }
  } else {
    for (std::ptrdiff_t i = 0; i < n; ++i) {
      const double v = f(x[i]);
      out[i] = v;
      if (bad(x[i], v)) worst = std::min(worst, static_cast<std::size_t>(i));
    }
  }
  return worst;
}

// Deterministic blocked reduction: Acc accumulates one block serially, block
// partials are combined serially in block order. The block layout is shared
// by the serial and the parallel variant.
template <class Acc>
double blocked_reduce(std::size_t n, Exec mode, Acc acc) {
  if (n == 0) return 0.0;
  const std::size_t nblocks = (n + kSumBlock - 1) / kSumBlock;
  if (nblocks == 1) return acc(0, n);
  std::vector<double> partial(nblocks);
  const std::ptrdiff_t nb = static_cast<std::ptrdiff_t>(nblocks);
  if (run_parallel(static_cast<std::ptrdiff_t>(n), mode)) {
#ifdef _OPENMP
#pragma omp parallel for schedule(static)
#endif
    for (std::ptrdiff_t b = 0; b < nb; ++b) {
      const std::size_t lo = static_cast<std::size_t>(b) * kSumBlock;
      partial[b] = acc(lo, std::min(lo + kSumBlock, n));
    }
  } else {
    for (std::ptrdiff_t b = 0; b < nb; ++b) {
      const std::size_t lo = static_cast<std::size_t>(b) * kSumBlock;
      partial[b] = acc(lo, std::min(lo + kSumBlock, n));
    }
  }
  double total = 0.0;
  for (std::size_t b = 0; b < nblocks; ++b) total += partial[b];
  return total;
}

}  // namespace

Exec execution_mode() { return g_mode.load(std::memory_order_relaxed); }

void set_execution_mode(Exec mode) { g_mode.store(mode, std::memory_order_relaxed); }

int thread_count() {
#ifdef _OPENMP
  return omp_get_max_threads();
#else
  return 1;
#endif
}

void add(std::span<const double> x, std::span<const double> y, std::span<double> out, Exec mode) {
  map2(x, y, out, mode, [](double a, double b) { return a + b; });
}

void add_scalar(std::span<const double> x, double c, std::span<double> out, Exec mode) {
  map(x, out, mode, [c](double a) { return a + c; });
}

void subtract(std::span<const double> x, std::span<const double> y, std::span<double> out,
              Exec mode) {
  map2(x, y, out, mode, [](double a, double b) { return a - b; });
}

void subtract_scalar(std::span<const double> x, double c, std::span<double> out, Exec mode) {
  map(x, out, mode, [c](double a) { return a - c; });
}

void scalar_subtract(double c, std::span<const double> x, std::span<double> out, Exec mode) {
  map(x, out, mode, [c](double a) { return c - a; });
}

void multiply(std::span<const double> x, std::span<const double> y, std::span<double> out,
              Exec mode) {
  map2(x, y, out, mode, [](double a, double b) { return a * b; });
}

void multiply_scalar(std::span<const double> x, double c, std::span<double> out, Exec mode) {
  map(x, out, mode, [c](double a) { return a * c; });
}

void maximum(std::span<const double> x, std::span<const double> y, std::span<double> out,
             Exec mode) {
  map2(x, y, out, mode, [](double a, double b) { return a > b ? a : b; });
}

void maximum_scalar(std::span<const double> x, double c, std::span<double> out, Exec mode) {
  map(x, out, mode, [c](double a) { return a > c ? a : c; });
}

std::size_t divide(std::span<const double> x, std::span<const double> y, std::span<double> out,
                   Exec mode) {
  const std::ptrdiff_t n = static_cast<std::ptrdiff_t>(x.size());
  std::size_t worst = kNoIndex;
  if (run_parallel(n, mode)) {
#ifdef _OPENMP
#pragma omp parallel for schedule(static) reduction(min : worst)
#endif
    for (std::ptrdiff_t i = 0; i < n; ++i) {
      out[i] = x[i] / y[i];
      if (y[i] == 0.0) worst = std::min(worst, static_cast<std::size_t>(i));
    }
  } else {
    for (std::ptrdiff_t i = 0; i < n; ++i) {
      out[i] = x[i] / y[i];
      if (y[i] == 0.0) worst = std::min(worst, static_cast<std::size_t>(i));
    }
  }
  return worst;
}

void divide_scalar(std::span<const double> x, double c, std::span<double> out, Exec mode) {
  map(x, out, mode, [c](double a) { return a / c; });
}

std::size_t scalar_divide(double c, std::span<const double> x, std::span<double> out, Exec mode) {
  return map_checked(
      x, out, mode, [c](double a) { return c / a; },
      [](double a, double) { return a == 0.0; });
}

void negate(std::span<const double> x, std::span<double> out, Exec mode) {
  map(x, out, mode, [](double a) { return -a; });
}

std::size_t exponential(std::span<const double> x, std::span<double> out, Exec mode) {
  return map_checked(
      x, out, mode, [](double a) { return std::exp(a); },
      [](double, double v) { return !std::isfinite(v); });
}

std::size_t logarithm(std::span<const double> x, std::span<double> out, Exec mode) {
  return map_checked(
      x, out, mode, [](double a) { return std::log(a); },
      [](double a, double) { return !(a > 0.0); });
}

std::size_t square_root(std::span<const double> x, std::span<double> out, Exec mode) {
  return map_checked(
      x, out, mode, [](double a) { return std::sqrt(a); },
      [](double a, double) { return a < 0.0; });
}

void indicator_positive(std::span<const double> x, std::span<double> out, Exec mode) {
  map(x, out, mode, [](double a) { return a > 0.0 ? 1.0 : 0.0; });
}

void window_indicator(std::span<const double> x, double half_width, std::span<double> out,
                      Exec mode) {
  map(x, out, mode, [half_width](double a) { return std::fabs(a) < half_width ? 1.0 : 0.0; });
}

double sum(std::span<const double> x, Exec mode) {
  return blocked_reduce(x.size(), mode, [&x](std::size_t lo, std::size_t hi) {
    double s = 0.0;
    for (std::size_t i = lo; i < hi; ++i) s += x[i];
    return s;
  });
}

double dot(std::span<const double> x, std::span<const double> y, Exec mode) {
  return blocked_reduce(x.size(), mode, [&x, &y](std::size_t lo, std::size_t hi) {
    double s = 0.0;
    for (std::size_t i = lo; i < hi; ++i) s += x[i] * y[i];
    return s;
  });
}

std::size_t count_in_window(std::span<const double> x, double half_width, Exec mode) {
  const std::ptrdiff_t n = static_cast<std::ptrdiff_t>(x.size());
  std::int64_t count = 0;
  if (run_parallel(n, mode)) {
#ifdef _OPENMP
#pragma omp parallel for schedule(static) reduction(+ : count)
#endif
    for (std::ptrdiff_t i = 0; i < n; ++i) {
      if (std::fabs(x[i]) < half_width) ++count;
    }
  } else {
    for (std::ptrdiff_t i = 0; i < n; ++i) {
      if (std::fabs(x[i]) < half_width) ++count;
    }
  }
  return static_cast<std::size_t>(count);
}

}  // namespace stochad::kernels
