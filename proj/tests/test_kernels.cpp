#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <cmath>
#include <vector>

#include "stochad/kernels.hpp"
#include "testutil.hpp"

using stochad::kernels::Exec;
using stochad::kernels::kNoIndex;
using stochad::kernels::kSumBlock;

namespace {

// Large enough to cross the internal parallel-dispatch threshold.
constexpr std::size_t kN = 100000;

std::vector<double> run_both_and_compare(const auto& kernel) {
  std::vector<double> serial(kN), parallel(kN);
  kernel(std::span<double>(serial), Exec::Serial);
  kernel(std::span<double>(parallel), Exec::Parallel);
  CHECK(serial == parallel);
  return serial;
}

}  // namespace

TEST_CASE("elementwise kernels are bitwise identical in serial and parallel mode") {
  const std::vector<double> x = testutil::random_vector(kN, 11);
  const std::vector<double> y = testutil::random_vector(kN, 22);

  run_both_and_compare([&](std::span<double> out, Exec m) { stochad::kernels::add(x, y, out, m); });
  run_both_and_compare(
      [&](std::span<double> out, Exec m) { stochad::kernels::add_scalar(x, 0.75, out, m); });
  run_both_and_compare(
      [&](std::span<double> out, Exec m) { stochad::kernels::subtract(x, y, out, m); });
  run_both_and_compare(
      [&](std::span<double> out, Exec m) { stochad::kernels::subtract_scalar(x, 0.75, out, m); });
  run_both_and_compare(
      [&](std::span<double> out, Exec m) { stochad::kernels::scalar_subtract(0.75, x, out, m); });
  run_both_and_compare(
      [&](std::span<double> out, Exec m) { stochad::kernels::multiply(x, y, out, m); });
  run_both_and_compare(
      [&](std::span<double> out, Exec m) { stochad::kernels::multiply_scalar(x, -2.5, out, m); });
  run_both_and_compare(
      [&](std::span<double> out, Exec m) { stochad::kernels::maximum(x, y, out, m); });
  run_both_and_compare(
      [&](std::span<double> out, Exec m) { stochad::kernels::maximum_scalar(x, 0.1, out, m); });
  run_both_and_compare([&](std::span<double> out, Exec m) { stochad::kernels::negate(x, out, m); });
  run_both_and_compare(
      [&](std::span<double> out, Exec m) { stochad::kernels::exponential(x, out, m); });
  run_both_and_compare(
      [&](std::span<double> out, Exec m) { stochad::kernels::indicator_positive(x, out, m); });
  run_both_and_compare(
      [&](std::span<double> out, Exec m) { stochad::kernels::window_indicator(x, 0.3, out, m); });

  const std::vector<double> positive = testutil::random_vector(kN, 33, 0.1, 3.0);
  run_both_and_compare(
      [&](std::span<double> out, Exec m) { stochad::kernels::logarithm(positive, out, m); });
  run_both_and_compare(
      [&](std::span<double> out, Exec m) { stochad::kernels::square_root(positive, out, m); });
  run_both_and_compare(
      [&](std::span<double> out, Exec m) { stochad::kernels::divide(x, positive, out, m); });
  run_both_and_compare(
      [&](std::span<double> out, Exec m) { stochad::kernels::scalar_divide(2.0, positive, out, m); });
}

TEST_CASE("reductions agree bitwise between modes and with the documented block order") {
  const std::vector<double> x = testutil::random_vector(kN, 44);
  const std::vector<double> y = testutil::random_vector(kN, 55);

  const double serial = stochad::kernels::sum(x, Exec::Serial);
  const double parallel = stochad::kernels::sum(x, Exec::Parallel);
  CHECK(serial == parallel);

  // Reference: accumulate fixed blocks left to right, then combine the
  // block partials in order. This is the documented reduction order.
  double reference = 0.0;
  for (std::size_t begin = 0; begin < x.size(); begin += kSumBlock) {
    const std::size_t end = std::min(begin + kSumBlock, x.size());
    double partial = 0.0;
    for (std::size_t i = begin; i < end; ++i) partial += x[i];
    reference += partial;
  }
  CHECK(serial == reference);

  CHECK(stochad::kernels::dot(x, y, Exec::Serial) == stochad::kernels::dot(x, y, Exec::Parallel));
  CHECK(stochad::kernels::count_in_window(x, 0.25, Exec::Serial) ==
        stochad::kernels::count_in_window(x, 0.25, Exec::Parallel));
}

TEST_CASE("count_in_window matches a direct strict count") {
  const std::vector<double> x = testutil::random_vector(kN, 66);
  const auto direct = static_cast<std::size_t>(
      std::count_if(x.begin(), x.end(), [](double v) { return std::fabs(v) < 0.25; }));
  CHECK(stochad::kernels::count_in_window(x, 0.25, Exec::Parallel) == direct);
}

TEST_CASE("domain-checking kernels report the smallest offending index") {
  std::vector<double> x = testutil::random_vector(kN, 77, 0.5, 1.5);
  std::vector<double> out(kN);

  CHECK(stochad::kernels::logarithm(x, out, Exec::Parallel) == kNoIndex);
  x[90000] = -1.0;
  x[17] = 0.0;
  CHECK(stochad::kernels::logarithm(x, out, Exec::Serial) == 17);
  CHECK(stochad::kernels::logarithm(x, out, Exec::Parallel) == 17);
  CHECK(stochad::kernels::square_root(x, out, Exec::Parallel) == 90000);

  std::vector<double> divisor = testutil::random_vector(kN, 88, 0.5, 1.5);
  divisor[123] = 0.0;
  CHECK(stochad::kernels::divide(x, divisor, out, Exec::Parallel) == 123);
  CHECK(stochad::kernels::scalar_divide(1.0, divisor, out, Exec::Parallel) == 123);

  std::vector<double> huge = testutil::random_vector(kN, 99);
  huge[4096] = 1e308;  // exp overflows to infinity
  CHECK(stochad::kernels::exponential(huge, out, Exec::Parallel) == 4096);
}

TEST_CASE("execution mode is a process-wide switch") {
  CHECK(stochad::kernels::thread_count() >= 1);
  const Exec before = stochad::kernels::execution_mode();
  stochad::kernels::set_execution_mode(Exec::Serial);
  CHECK(stochad::kernels::execution_mode() == Exec::Serial);
  stochad::kernels::set_execution_mode(before);
  CHECK(stochad::kernels::execution_mode() == before);
}

TEST_CASE("window indicator uses a strict inequality") {
  const std::vector<double> x = {-0.3, 0.0, 0.3, 0.2499999, -0.25};
  std::vector<double> out(x.size());
  stochad::kernels::window_indicator(x, 0.25, out, Exec::Serial);
  CHECK(out == std::vector<double>{0.0, 1.0, 0.0, 1.0, 0.0});
}
