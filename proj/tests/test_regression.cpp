#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <random>
#include <vector>

#include "stochad/errors.hpp"
#include "stochad/regression.hpp"
#include "testutil.hpp"

using stochad::DensitySamples;
using stochad::RandomVariable;
using stochad::RegressionBasis;

namespace {

RandomVariable rv(std::vector<double> v) { return RandomVariable(std::move(v)); }

}  // namespace

TEST_CASE("empirical density samples: single path counts itself") {
  const DensitySamples s = stochad::empirical_density_samples(rv({0.5}), 1.0);
  REQUIRE(s.x.size() == 1);
  CHECK(s.x[0] == 0.5);
  CHECK(s.y[0] == 2.0);  // (1/0.5) * (1/1)
  CHECK(s.paths == 1);
}

TEST_CASE("empirical density samples on a uniform grid") {
  // X = {0.1, 0.2, ..., 1.0}: the closed count over [0, x_k] is k, so every
  // density sample is k / (10 * 0.1k) = 1.
  std::vector<double> grid;
  for (int k = 1; k <= 10; ++k) grid.push_back(0.1 * k);
  const DensitySamples s = stochad::empirical_density_samples(rv(grid), 1.0);
  REQUIRE(s.x.size() == 10);
  for (std::size_t i = 0; i < s.x.size(); ++i) {
    CHECK(s.y[i] == doctest::Approx(1.0).epsilon(1e-12));
  }
}

TEST_CASE("empirical density samples exclude x = 0 and points beyond the half-width") {
  const DensitySamples s = stochad::empirical_density_samples(rv({0.0, 0.3, -0.3, 2.0, -2.0}), 0.5);
  REQUIRE(s.x.size() == 2);
  // Points appear in path order; the two-sided convention counts [x, 0] for
  // negative x, so both samples are positive.
  CHECK(s.x[0] == 0.3);
  CHECK(s.x[1] == -0.3);
  CHECK(s.y[0] > 0.0);
  CHECK(s.y[1] > 0.0);
  // Count for 0.3 over [0, 0.3] is {0.0, 0.3} = 2 of 5 paths.
  CHECK(s.y[0] == doctest::Approx(2.0 / (5 * 0.3)).epsilon(1e-12));
  // Count for -0.3 over [-0.3, 0] is {0.0, -0.3} = 2 of 5 paths.
  CHECK(s.y[1] == doctest::Approx(2.0 / (5 * 0.3)).epsilon(1e-12));
  // A sample exactly at the half-width is kept (0 < |x| <= r).
  const DensitySamples t = stochad::empirical_density_samples(rv({0.5, 9.0}), 0.5);
  CHECK(t.x.size() == 1);
}

TEST_CASE("fit_density recovers constants and exact lines") {
  DensitySamples s;
  s.x = {-0.2, -0.1, 0.1, 0.3};
  s.y = {0.7, 0.7, 0.7, 0.7};
  s.half_width = 0.5;
  s.paths = 4;
  CHECK(stochad::fit_density(s, 1) == doctest::Approx(0.7).epsilon(1e-14));
  CHECK(stochad::fit_density(s, 2) == doctest::Approx(0.7).epsilon(1e-12));

  for (std::size_t i = 0; i < s.x.size(); ++i) s.y[i] = 0.4 + 0.1 * s.x[i];
  CHECK(stochad::fit_density(s, 2) == doctest::Approx(0.4).epsilon(1e-12));
}

TEST_CASE("fit_density with the constant basis is the plain mean of the samples") {
  DensitySamples s;
  s.x = {-0.3, 0.2, 0.25, -0.1};
  s.y = {1.5, 0.5, 1.0, 3.0};
  s.half_width = 0.5;
  s.paths = 4;
  CHECK(stochad::fit_density(s, 1) == doctest::Approx(1.5).epsilon(1e-14));
}

TEST_CASE("fit_density approximates the standard normal density at zero") {
  std::mt19937_64 rng(2024);
  std::normal_distribution<double> normal(0.0, 1.0);
  std::vector<double> z(200000);
  for (double& v : z) v = normal(rng);
  const RandomVariable x = rv(z);
  const double r = 0.25 * standard_deviation(x);
  const double estimate = stochad::fit_density(stochad::empirical_density_samples(x, r), 2);
  CHECK(estimate == doctest::Approx(0.3989).epsilon(0.05));
  CHECK(std::fabs(estimate - 0.3989422804) < 0.02);
}

TEST_CASE("fit_distribution recovers known densities") {
  // Uniform on (-1, 1): density 1/2 everywhere.
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> uniform(-1.0, 1.0);
  std::vector<double> u(200000);
  for (double& v : u) v = uniform(rng);
  const double estimate = stochad::fit_distribution(rv(u), 0.5, 2);
  CHECK(std::fabs(estimate - 0.5) < 0.01);
}

TEST_CASE("fit_distribution with a single sample and one term is y/x") {
  // D-hat(0.7) counts [0, 0.7] = one of two paths = 0.5; the one-term fit of
  // 0.5 on basis {x} at x = 0.7 gives 0.5/0.7.
  const double estimate = stochad::fit_distribution(rv({0.7, 99.0}), 1.0, 1);
  CHECK(estimate == doctest::Approx(0.5 / 0.7).epsilon(1e-12));
}

TEST_CASE("fit_distribution is invariant under a sign flip of the trigger") {
  const std::vector<double> base = testutil::random_vector(5000, 13, -0.6, 0.6);
  std::vector<double> flipped = base;
  for (double& v : flipped) v = -v;
  const double a = stochad::fit_distribution(rv(base), 0.4, 2);
  const double b = stochad::fit_distribution(rv(flipped), 0.4, 2);
  CHECK(a == doctest::Approx(b).epsilon(1e-12));
}

TEST_CASE("fit_polynomial matches an exact parabola without constant term") {
  std::vector<double> x = {-0.4, -0.2, -0.1, 0.1, 0.2, 0.3};
  std::vector<double> y(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) y[i] = 0.3 * x[i] + 0.05 * x[i] * x[i];
  const std::vector<double> c = stochad::fit_polynomial(x, y, 1, 2);
  REQUIRE(c.size() == 2);
  CHECK(c[0] == doctest::Approx(0.3).epsilon(1e-12));
  CHECK(c[1] == doctest::Approx(0.05).epsilon(1e-10));
  CHECK(stochad::evaluate_polynomial(c, 1, 2.0) ==
        doctest::Approx(0.3 * 2.0 + 0.05 * 4.0).epsilon(1e-12));
}

TEST_CASE("localized least squares recovers constants and exact lines") {
  const std::vector<double> xs = testutil::random_vector(400, 5, -0.2, 0.2);
  const RandomVariable x = rv(xs);

  RegressionBasis basis;
  basis.kind = RegressionBasis::Kind::Density;
  basis.order = 1;
  basis.half_width = 0.5;
  const std::vector<double> constant =
      stochad::localized_least_squares(RandomVariable(2.5), x, basis);
  REQUIRE(constant.size() == 1);
  CHECK(constant[0] == doctest::Approx(2.5).epsilon(1e-13));

  std::vector<double> ys(xs.size());
  for (std::size_t i = 0; i < xs.size(); ++i) ys[i] = 2.0 + 3.0 * xs[i];
  basis.order = 2;
  const std::vector<double> line = stochad::localized_least_squares(rv(ys), x, basis);
  REQUIRE(line.size() == 2);
  CHECK(line[0] == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(line[1] == doctest::Approx(3.0).epsilon(1e-12));
}

TEST_CASE("localized least squares ignores out-of-window paths") {
  // In-window paths lie on y = 1 + x; out-of-window paths carry garbage.
  const RandomVariable x = rv({-0.1, 0.05, 0.2, 5.0, -7.0});
  const RandomVariable y = rv({0.9, 1.05, 1.2, 123.0, -456.0});
  RegressionBasis basis;
  basis.order = 2;
  basis.half_width = 0.5;
  const std::vector<double> c = stochad::localized_least_squares(y, x, basis);
  CHECK(c[0] == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(c[1] == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("duplicating every observation leaves the coefficients unchanged") {
  std::vector<double> x = {-0.2, -0.05, 0.1, 0.25};
  std::vector<double> y = {1.1, 0.8, 1.4, 0.9};
  const std::vector<double> once = stochad::fit_polynomial(x, y, 0, 2);
  std::vector<double> x2 = x;
  std::vector<double> y2 = y;
  x2.insert(x2.end(), x.begin(), x.end());
  y2.insert(y2.end(), y.begin(), y.end());
  const std::vector<double> twice = stochad::fit_polynomial(x2, y2, 0, 2);
  REQUIRE(once.size() == twice.size());
  for (std::size_t i = 0; i < once.size(); ++i) {
    CHECK(once[i] == doctest::Approx(twice[i]).epsilon(1e-13));
  }
}

TEST_CASE("normal equations agree with an independent QR solver") {
  const std::vector<double> xs = testutil::random_vector(2000, 17, -0.5, 0.5);
  const std::vector<double> noise = testutil::random_vector(2000, 18, -0.05, 0.05);
  std::vector<double> ys(xs.size());
  for (std::size_t i = 0; i < xs.size(); ++i) {
    ys[i] = 0.7 - 0.4 * xs[i] + 0.2 * xs[i] * xs[i] + noise[i];
  }
  const std::vector<double> mine = stochad::fit_polynomial(xs, ys, 0, 3);

  std::vector<std::vector<double>> design(xs.size(), std::vector<double>(3));
  for (std::size_t i = 0; i < xs.size(); ++i) {
    design[i] = {1.0, xs[i], xs[i] * xs[i]};
  }
  const std::vector<double> oracle = testutil::qr_least_squares(design, ys);
  REQUIRE(mine.size() == oracle.size());
  for (std::size_t i = 0; i < mine.size(); ++i) {
    CHECK(mine[i] == doctest::Approx(oracle[i]).epsilon(1e-8));
  }
}

TEST_CASE("identical inputs give bitwise identical coefficients") {
  const std::vector<double> xs = testutil::random_vector(500, 19, -0.5, 0.5);
  const std::vector<double> ys = testutil::random_vector(500, 20, 0.0, 2.0);
  const std::vector<double> a = stochad::fit_polynomial(xs, ys, 0, 2);
  const std::vector<double> b = stochad::fit_polynomial(xs, ys, 0, 2);
  CHECK(a == b);
}

TEST_CASE("regression error cases") {
  // Fewer samples than basis functions.
  CHECK_THROWS_AS((void)stochad::fit_polynomial(std::vector<double>{0.5}, std::vector<double>{1.0},
                                                0, 2),
                  stochad::TooFewSamplesError);

  // All abscissae identical: the two-column basis {1, x} is rank one.
  CHECK_THROWS_AS((void)stochad::fit_polynomial(std::vector<double>{0.5, 0.5, 0.5},
                                                std::vector<double>{1.0, 2.0, 3.0}, 0, 2),
                  stochad::SingularRegressionError);

  // Empty localization window.
  RegressionBasis basis;
  basis.order = 1;
  basis.half_width = 0.001;
  CHECK_THROWS_AS(
      (void)stochad::localized_least_squares(rv({1.0, 2.0}), rv({5.0, -9.0}), basis),
      stochad::EmptyWindowError);

  // The error taxonomy is catchable through the shared bases.
  CHECK_THROWS_AS((void)stochad::fit_polynomial(std::vector<double>{0.5}, std::vector<double>{1.0},
                                                0, 2),
                  stochad::RegressionError);
  CHECK_THROWS_AS((void)stochad::fit_polynomial(std::vector<double>{0.5}, std::vector<double>{1.0},
                                                0, 2),
                  stochad::Error);

  DensitySamples empty;
  empty.half_width = 0.5;
  empty.paths = 10;
  CHECK_THROWS_AS((void)stochad::fit_density(empty, 1), stochad::TooFewSamplesError);
}
