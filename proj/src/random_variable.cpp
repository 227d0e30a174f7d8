#include "stochad/random_variable.hpp"

#include <cmath>
#include <string>
#include <utility>

#include "stochad/kernels.hpp"

namespace stochad {

namespace {

using kernels::Exec;
using kernels::kNoIndex;

RandomVariable wrap(std::vector<double> v) { return RandomVariable(std::move(v)); }

[[noreturn]] void throw_mismatch(const char* op, std::size_t nx, std::size_t ny) {
  throw Error(std::string(op) + ": sample count mismatch (" + std::to_string(nx) + " vs " +
              std::to_string(ny) + ")");
}

[[noreturn]] void throw_domain(const char* op, const char* what, std::size_t index) {
  throw Error(std::string(op) + ": " + what + " at path " + std::to_string(index));
}

// Binary dispatch: deterministic operands broadcast, sampled operands must
// have equal length. FScal folds two deterministic values.
template <class FVecVec, class FVecScal, class FScalVec, class FScal>
RandomVariable binary(const char* op, const RandomVariable& x, const RandomVariable& y, FVecVec vv,
                      FVecScal vs, FScalVec sv, FScal ss) {
  const Exec mode = kernels::execution_mode();
  if (x.deterministic() && y.deterministic()) return RandomVariable(ss(x.scalar(), y.scalar()));
  if (y.deterministic()) {
    std::vector<double> out(x.size());
    vs(x.samples(), y.scalar(), std::span<double>(out), mode);
    return wrap(std::move(out));
  }
  if (x.deterministic()) {
    std::vector<double> out(y.size());
    sv(x.scalar(), y.samples(), std::span<double>(out), mode);
    return wrap(std::move(out));
  }
  if (x.size() != y.size()) throw_mismatch(op, x.size(), y.size());
  std::vector<double> out(x.size());
  vv(x.samples(), y.samples(), std::span<double>(out), mode);
  return wrap(std::move(out));
}

}  // namespace

RandomVariable::RandomVariable(std::vector<double> samples) {
  if (samples.empty()) throw Error("RandomVariable: empty sample vector");
  data_ = std::make_shared<const std::vector<double>>(std::move(samples));
}

double RandomVariable::scalar() const {
  if (data_) throw Error("RandomVariable: scalar() called on a sampled value");
  return value_;
}

std::span<const double> RandomVariable::samples() const {
  if (!data_) throw Error("RandomVariable: samples() called on a deterministic value");
  return std::span<const double>(data_->data(), data_->size());
}

RandomVariable operator+(const RandomVariable& x, const RandomVariable& y) {
  return binary(
      "add", x, y, kernels::add,
      [](auto a, double c, auto out, Exec m) { kernels::add_scalar(a, c, out, m); },
      [](double c, auto a, auto out, Exec m) { kernels::add_scalar(a, c, out, m); },
      [](double a, double b) { return a + b; });
}

RandomVariable operator+(const RandomVariable& x, double c) { return x + RandomVariable(c); }
RandomVariable operator+(double c, const RandomVariable& x) { return RandomVariable(c) + x; }

RandomVariable operator-(const RandomVariable& x, const RandomVariable& y) {
  return binary(
      "subtract", x, y, kernels::subtract,
      [](auto a, double c, auto out, Exec m) { kernels::subtract_scalar(a, c, out, m); },
      [](double c, auto a, auto out, Exec m) { kernels::scalar_subtract(c, a, out, m); },
      [](double a, double b) { return a - b; });
}

RandomVariable operator-(const RandomVariable& x, double c) { return x - RandomVariable(c); }
RandomVariable operator-(double c, const RandomVariable& x) { return RandomVariable(c) - x; }

RandomVariable operator-(const RandomVariable& x) {
  if (x.deterministic()) return RandomVariable(-x.scalar());
  std::vector<double> out(x.size());
  kernels::negate(x.samples(), out, kernels::execution_mode());
  return wrap(std::move(out));
}

RandomVariable operator*(const RandomVariable& x, const RandomVariable& y) {
  return binary(
      "multiply", x, y, kernels::multiply,
      [](auto a, double c, auto out, Exec m) { kernels::multiply_scalar(a, c, out, m); },
      [](double c, auto a, auto out, Exec m) { kernels::multiply_scalar(a, c, out, m); },
      [](double a, double b) { return a * b; });
}

RandomVariable operator*(const RandomVariable& x, double c) { return x * RandomVariable(c); }
RandomVariable operator*(double c, const RandomVariable& x) { return RandomVariable(c) * x; }

RandomVariable operator/(const RandomVariable& x, const RandomVariable& y) {
  const Exec mode = kernels::execution_mode();
  if (y.deterministic()) {
    if (y.scalar() == 0.0) throw Error("divide: divisor is zero");
    if (x.deterministic()) return RandomVariable(x.scalar() / y.scalar());
    std::vector<double> out(x.size());
    kernels::divide_scalar(x.samples(), y.scalar(), out, mode);
    return wrap(std::move(out));
  }
  if (x.deterministic()) {
    std::vector<double> out(y.size());
    const std::size_t bad = kernels::scalar_divide(x.scalar(), y.samples(), out, mode);
    if (bad != kNoIndex) throw_domain("divide", "divisor sample is zero", bad);
    return wrap(std::move(out));
  }
  if (x.size() != y.size()) throw_mismatch("divide", x.size(), y.size());
  std::vector<double> out(x.size());
  const std::size_t bad = kernels::divide(x.samples(), y.samples(), out, mode);
  if (bad != kNoIndex) throw_domain("divide", "divisor sample is zero", bad);
  return wrap(std::move(out));
}

RandomVariable operator/(const RandomVariable& x, double c) { return x / RandomVariable(c); }
RandomVariable operator/(double c, const RandomVariable& x) { return RandomVariable(c) / x; }

RandomVariable exp(const RandomVariable& x) {
  if (x.deterministic()) {
    const double v = std::exp(x.scalar());
    if (!std::isfinite(v)) throw Error("exp: result overflows");
    return RandomVariable(v);
  }
  std::vector<double> out(x.size());
  const std::size_t bad = kernels::exponential(x.samples(), out, kernels::execution_mode());
  if (bad != kNoIndex) throw_domain("exp", "result overflows", bad);
  return wrap(std::move(out));
}

RandomVariable log(const RandomVariable& x) {
  if (x.deterministic()) {
    if (!(x.scalar() > 0.0)) throw Error("log: non-positive argument");
    return RandomVariable(std::log(x.scalar()));
  }
  std::vector<double> out(x.size());
  const std::size_t bad = kernels::logarithm(x.samples(), out, kernels::execution_mode());
  if (bad != kNoIndex) throw_domain("log", "non-positive sample", bad);
  return wrap(std::move(out));
}

RandomVariable sqrt(const RandomVariable& x) {
  if (x.deterministic()) {
    if (x.scalar() < 0.0) throw Error("sqrt: negative argument");
    return RandomVariable(std::sqrt(x.scalar()));
  }
  std::vector<double> out(x.size());
  const std::size_t bad = kernels::square_root(x.samples(), out, kernels::execution_mode());
  if (bad != kNoIndex) throw_domain("sqrt", "negative sample", bad);
  return wrap(std::move(out));
}

RandomVariable max(const RandomVariable& x, const RandomVariable& y) {
  return binary(
      "max", x, y, kernels::maximum,
      [](auto a, double c, auto out, Exec m) { kernels::maximum_scalar(a, c, out, m); },
      [](double c, auto a, auto out, Exec m) { kernels::maximum_scalar(a, c, out, m); },
      [](double a, double b) { return a > b ? a : b; });
}

RandomVariable max(const RandomVariable& x, double c) { return max(x, RandomVariable(c)); }
RandomVariable max(double c, const RandomVariable& x) { return max(RandomVariable(c), x); }

RandomVariable indicator(const RandomVariable& x) {
  if (x.deterministic()) return RandomVariable(x.scalar() > 0.0 ? 1.0 : 0.0);
  std::vector<double> out(x.size());
  kernels::indicator_positive(x.samples(), out, kernels::execution_mode());
  return wrap(std::move(out));
}

double expectation(const RandomVariable& x) {
  if (x.deterministic()) return x.scalar();
  return kernels::sum(x.samples(), kernels::execution_mode()) / static_cast<double>(x.size());
}

double variance(const RandomVariable& x) {
  if (x.size() < 2) throw Error("variance: requires at least two samples");
  const double n = static_cast<double>(x.size());
  const Exec mode = kernels::execution_mode();
  const double mean = kernels::sum(x.samples(), mode) / n;
  const double mean_sq = kernels::dot(x.samples(), x.samples(), mode) / n;
  return mean_sq - mean * mean;
}

double standard_deviation(const RandomVariable& x) { return std::sqrt(variance(x)); }

}  // namespace stochad
