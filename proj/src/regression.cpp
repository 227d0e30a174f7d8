#include "stochad/regression.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <utility>

#include "stochad/kernels.hpp"

namespace stochad {

namespace {

// Gaussian elimination with partial pivoting on the normal equations.
// Systems here are tiny (order <= ~4). A pivot below 1e-12 relative to the
// largest initial matrix entry signals a singular basis.
std::vector<double> solve_normal_equations(std::vector<std::vector<double>> g,
                                           std::vector<double> b) {
  const std::size_t m = b.size();
  double scale = 0.0;
  for (const auto& row : g)
    for (double v : row) scale = std::max(scale, std::fabs(v));
  if (scale == 0.0) throw SingularRegressionError("regression: zero normal matrix");
  const double threshold = 1e-12 * scale;

  for (std::size_t k = 0; k < m; ++k) {
    std::size_t pivot = k;
    for (std::size_t i = k + 1; i < m; ++i)
      if (std::fabs(g[i][k]) > std::fabs(g[pivot][k])) pivot = i;
    if (std::fabs(g[pivot][k]) < threshold)
      throw SingularRegressionError("regression: singular normal equations (pivot " +
                                    std::to_string(g[pivot][k]) + ")");
    if (pivot != k) {
      std::swap(g[pivot], g[k]);
      std::swap(b[pivot], b[k]);
    }
    for (std::size_t i = k + 1; i < m; ++i) {
      const double f = g[i][k] / g[k][k];
      for (std::size_t j = k; j < m; ++j) g[i][j] -= f * g[k][j];
      b[i] -= f * b[k];
    }
  }
  std::vector<double> c(m);
  for (std::size_t k = m; k-- > 0;) {
    double acc = b[k];
    for (std::size_t j = k + 1; j < m; ++j) acc -= g[k][j] * c[j];
    c[k] = acc / g[k][k];
  }
  return c;
}

// Counts of X_j in the closed interval between 0 and each in-window sample,
// via one sorted copy of the samples. The count for x > 0 is #{0 <= X <= x},
// for x < 0 it is #{x <= X <= 0}.
struct SignedCounts {
  std::vector<double> x;       // in-window samples, path order, x != 0
  std::vector<double> counts;  // matching interval counts (always >= 1)
};

SignedCounts interval_counts(const RandomVariable& x, double half_width) {
  if (!(half_width > 0.0)) throw Error("regression: window half width must be positive");
  const auto s = x.samples();
  std::vector<double> sorted(s.begin(), s.end());
  std::stable_sort(sorted.begin(), sorted.end());
  const auto below_zero = std::lower_bound(sorted.begin(), sorted.end(), 0.0);
  const auto upto_zero = std::upper_bound(sorted.begin(), sorted.end(), 0.0);

  SignedCounts out;
  for (double xi : s) {
    if (xi == 0.0 || std::fabs(xi) > half_width) continue;
    std::ptrdiff_t cnt;
    if (xi > 0.0) {
      cnt = std::upper_bound(below_zero, sorted.end(), xi) - below_zero;
    } else {
      cnt = upto_zero - std::lower_bound(sorted.begin(), upto_zero, xi);
    }
    out.x.push_back(xi);
    out.counts.push_back(static_cast<double>(cnt));
  }
  return out;
}

}  // namespace

DensitySamples empirical_density_samples(const RandomVariable& x, double half_width) {
  SignedCounts c = interval_counts(x, half_width);
  const double n = static_cast<double>(x.size());
  DensitySamples out;
  out.half_width = half_width;
  out.paths = x.size();
  out.x = std::move(c.x);
  out.y.resize(out.x.size());
  for (std::size_t i = 0; i < out.x.size(); ++i)
    out.y[i] = c.counts[i] / (n * std::fabs(out.x[i]));
  return out;
}

std::vector<double> fit_polynomial(std::span<const double> x, std::span<const double> y,
                                   int first_power, int terms) {
  if (terms < 1) throw Error("fit_polynomial: need at least one basis term");
  if (x.size() < static_cast<std::size_t>(terms))
    throw TooFewSamplesError("regression: " + std::to_string(x.size()) + " samples for " +
                             std::to_string(terms) + " basis functions");
  // Normal equations G c = b with G[j][k] = sum x^(2*first_power+j+k) and
  // b[j] = sum x^(first_power+j) y, accumulated in point order.
  const std::size_t nmom = static_cast<std::size_t>(2 * (terms - 1)) + 1;
  std::vector<double> moments(nmom, 0.0);
  std::vector<double> rhs(static_cast<std::size_t>(terms), 0.0);
  for (std::size_t i = 0; i < x.size(); ++i) {
    double base = 1.0;
    for (int t = 0; t < first_power; ++t) base *= x[i];
    double p = base * base;  // x^(2*first_power)
    for (std::size_t t = 0; t < nmom; ++t) {
      moments[t] += p;
      p *= x[i];
    }
    double q = base;
    for (int j = 0; j < terms; ++j) {
      rhs[static_cast<std::size_t>(j)] += q * y[i];
      q *= x[i];
    }
  }
  std::vector<std::vector<double>> g(static_cast<std::size_t>(terms),
                                     std::vector<double>(static_cast<std::size_t>(terms)));
  for (int j = 0; j < terms; ++j)
    for (int k = 0; k < terms; ++k)
      g[static_cast<std::size_t>(j)][static_cast<std::size_t>(k)] =
          moments[static_cast<std::size_t>(j + k)];
  return solve_normal_equations(std::move(g), std::move(rhs));
}

double evaluate_polynomial(std::span<const double> coeffs, int first_power, double x) {
  double acc = 0.0;
  double p = 1.0;
  for (int t = 0; t < first_power; ++t) p *= x;
  for (double c : coeffs) {
    acc += c * p;
    p *= x;
  }
  return acc;
}

double fit_density(const DensitySamples& samples, int order) {
  return fit_polynomial(samples.x, samples.y, 0, order)[0];
}

double fit_distribution(const RandomVariable& x, double half_width, int order) {
  SignedCounts c = interval_counts(x, half_width);
  const double n = static_cast<double>(x.size());
  std::vector<double> d(c.x.size());
  for (std::size_t i = 0; i < c.x.size(); ++i)
    d[i] = (c.x[i] > 0.0 ? c.counts[i] : -c.counts[i]) / n;
  return fit_polynomial(c.x, d, 1, order)[0];
}

std::vector<double> localized_least_squares(const RandomVariable& y, const RandomVariable& x,
                                            const RegressionBasis& basis) {
  if (basis.order < 1) throw Error("localized_least_squares: order must be >= 1");
  if (x.deterministic()) throw Error("localized_least_squares: trigger must be sampled");
  const std::size_t n = x.size();
  if (!y.deterministic() && y.size() != n)
    throw Error("localized_least_squares: sample count mismatch");

  const auto mode = kernels::execution_mode();
  std::vector<double> window(n);
  kernels::window_indicator(x.samples(), basis.half_width, window, mode);
  const std::size_t in_window = kernels::count_in_window(x.samples(), basis.half_width, mode);
  if (in_window == 0)
    throw EmptyWindowError("localized_least_squares: no path inside the window");

  const int first = basis.kind == RegressionBasis::Kind::Density ? 0 : 1;
  const int terms = basis.order;
  // Since the window mask is 0/1, B_j B_k = 1_W x^(j+k); assemble the Gram
  // matrix from masked power sums via the deterministic reduction kernels.
  const RandomVariable mask{std::move(window)};
  const RandomVariable yw = mask * y;  // always sampled; broadcasts scalar y

  const int tmax = 2 * (first + terms - 1);
  std::vector<double> moments(static_cast<std::size_t>(tmax) + 1, 0.0);
  std::vector<double> rhs(static_cast<std::size_t>(terms), 0.0);
  RandomVariable p = mask;  // 1_W x^t
  for (int t = 0; t <= tmax; ++t) {
    moments[static_cast<std::size_t>(t)] = kernels::sum(p.samples(), mode);
    if (t >= first && t < first + terms)
      rhs[static_cast<std::size_t>(t - first)] = kernels::dot(p.samples(), yw.samples(), mode);
    if (t < tmax) p = p * x;
  }
  std::vector<std::vector<double>> g(static_cast<std::size_t>(terms),
                                     std::vector<double>(static_cast<std::size_t>(terms)));
  for (int j = 0; j < terms; ++j)
    for (int k = 0; k < terms; ++k)
      g[static_cast<std::size_t>(j)][static_cast<std::size_t>(k)] =
          moments[static_cast<std::size_t>(2 * first + j + k)];
  return solve_normal_equations(std::move(g), std::move(rhs));
}

}  // namespace stochad
