// Command-line harness around the stochad library: single delta estimates,
// repeated-seed comparison tables, width sweeps and density-regression dumps,
// all as CSV plus a short text mirror on standard output.

#include <cstdint>
#include <cstdio>
#include <iostream>
#include <map>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "stochad/errors.hpp"
#include "stochad/experiment.hpp"
#include "stochad/kernels.hpp"

namespace {

using stochad::EstimatorSpec;
using stochad::IndicatorDiffStrategy;

struct CommonFlags {
  double s0 = 1.0;
  double strike = 1.05;
  double rate = 0.05;
  double volatility = 0.5;
  double maturity = 1.0;
  std::size_t paths = 200000;
  std::uint64_t seed = 3141;
  double w = 0.05;
  double w_phi = 0.5;
  int order = 2;
  std::string regressand = "distribution";
  std::string fd_convention = "half";
  std::string width_units = "stddev";

  void add_model_options(CLI::App* cmd) {
    cmd->add_option("--s0", s0, "initial value S0")->capture_default_str();
    cmd->add_option("--strike", strike, "digital option strike K")->capture_default_str();
    cmd->add_option("--rate", rate, "risk free rate r")->capture_default_str();
    cmd->add_option("--vol", volatility, "volatility sigma")->capture_default_str();
    cmd->add_option("--maturity", maturity, "maturity T")->capture_default_str();
    cmd->add_option("--paths", paths, "Monte-Carlo paths per experiment")
        ->envname("STOCHAD_PATHS")
        ->capture_default_str();
    cmd->add_option("--seed", seed, "base random seed")
        ->envname("STOCHAD_SEED")
        ->capture_default_str();
  }

  void add_width_options(CLI::App* cmd) {
    cmd->add_option("--w", w, "localization width (trigger standard deviations by default)")
        ->capture_default_str();
    cmd->add_option("--wphi", w_phi, "regression window width (trigger standard deviations)")
        ->capture_default_str();
    cmd->add_option("--m", order, "regression order (number of basis functions)")
        ->capture_default_str();
    cmd->add_option("--regressand", regressand, "regress the density or the distribution")
        ->check(CLI::IsMember({"distribution", "density"}))
        ->capture_default_str();
    cmd->add_option("--fd-shift-convention", fd_convention,
                    "finite difference bump: half (S0 +- w/2) or full (S0 +- w)")
        ->check(CLI::IsMember({"half", "full"}))
        ->capture_default_str();
    cmd->add_option("--width-units", width_units,
                    "interpret --w in trigger standard deviations or absolute units")
        ->check(CLI::IsMember({"stddev", "absolute"}))
        ->capture_default_str();
  }

  stochad::BlackScholesParams params() const { return {s0, rate, volatility, maturity}; }
  stochad::DigitalOption option() const { return {strike, maturity}; }

  IndicatorDiffStrategy::Kind regression_kind() const {
    return regressand == "density" ? IndicatorDiffStrategy::Kind::DensityRegression
                                   : IndicatorDiffStrategy::Kind::DistributionRegression;
  }
  EstimatorSpec::FdShiftConvention convention() const {
    return fd_convention == "full" ? EstimatorSpec::FdShiftConvention::FullWidth
                                   : EstimatorSpec::FdShiftConvention::HalfWidth;
  }
  IndicatorDiffStrategy::WidthUnits units() const {
    return width_units == "absolute" ? IndicatorDiffStrategy::WidthUnits::Absolute
                                     : IndicatorDiffStrategy::WidthUnits::StddevOfTrigger;
  }

  std::vector<EstimatorSpec> estimators() const {
    std::vector<EstimatorSpec> specs =
        stochad::standard_estimators(w, w_phi, order, regression_kind(), convention());
    for (EstimatorSpec& spec : specs) {
      spec.strategy.width_units = units();
      spec.shift_units = units();
    }
    return specs;
  }
};

EstimatorSpec pick_estimator(const CommonFlags& flags, const std::string& method) {
  if (method == "fd") return EstimatorSpec::finite_difference(flags.w, flags.convention());
  if (method == "analytic") return EstimatorSpec::analytic();
  if (method == "lr") return EstimatorSpec::likelihood_ratio();
  IndicatorDiffStrategy strategy;
  if (method == "ad") {
    strategy = IndicatorDiffStrategy::discretized_delta(flags.w);
  } else if (flags.regression_kind() == IndicatorDiffStrategy::Kind::DensityRegression) {
    strategy = IndicatorDiffStrategy::density_regression(flags.w, flags.w_phi, flags.order);
  } else {
    strategy = IndicatorDiffStrategy::distribution_regression(flags.w, flags.w_phi, flags.order);
  }
  strategy.width_units = flags.units();
  EstimatorSpec spec = method == "ad" ? EstimatorSpec::stoch_ad(strategy)
                                      : EstimatorSpec::stoch_ad_regression(strategy);
  spec.shift_units = flags.units();
  return spec;
}

int run_delta(const CommonFlags& flags, const std::string& method) {
  const EstimatorSpec spec = pick_estimator(flags, method);
  const double delta =
      stochad::estimate_delta(spec, flags.params(), flags.option(), flags.paths, flags.seed);
  std::printf("%s: %.6f\n", spec.label.c_str(), delta);
  return 0;
}

int run_table(const CommonFlags& flags, std::size_t repeats, const std::string& out) {
  stochad::ExperimentConfig config{flags.params(), flags.option(), flags.paths,
                                   repeats,        flags.seed,    flags.estimators()};
  const stochad::ExperimentStats stats = stochad::run_experiment(config);
  stochad::write_table_csv(stats, out);
  stochad::print_table(stats, std::cout);
  std::cout << "wrote " << out << "\n";
  return 0;
}

int run_sweep(const CommonFlags& flags, std::size_t repeats, const std::vector<double>& widths,
              const std::string& out) {
  stochad::ExperimentConfig config{flags.params(), flags.option(), flags.paths,
                                   repeats,        flags.seed,    flags.estimators()};
  const std::vector<stochad::SweepRow> rows = stochad::width_sweep(config, widths);
  stochad::write_sweep_csv(rows, out);

  // Mirror: mean per (width, estimator), in file order.
  std::map<std::pair<double, std::string>, std::pair<double, std::size_t>> groups;
  for (const stochad::SweepRow& row : rows) {
    auto& [sum, count] = groups[{row.width, row.estimator}];
    sum += row.delta;
    ++count;
  }
  std::printf("%10s  %-28s %10s %6s\n", "width", "estimator", "mean", "seeds");
  for (const auto& [key, value] : groups) {
    std::printf("%10.6f  %-28s %10.6f %6zu\n", key.first, key.second.c_str(),
                value.first / static_cast<double>(value.second), value.second);
  }
  std::cout << "wrote " << out << " (" << rows.size() << " rows)\n";
  return 0;
}

int run_density(const CommonFlags& flags, const std::string& out) {
  const stochad::DensityDiagnostics diagnostics = stochad::density_diagnostics(
      flags.params(), flags.option(), flags.paths, flags.seed, flags.w_phi, flags.order);
  stochad::write_density_csv(diagnostics, out);
  std::printf("samples in window: %zu of %zu paths\n", diagnostics.samples.x.size(),
              diagnostics.samples.paths);
  std::printf("fitted coefficients:");
  for (double c : diagnostics.coefficients) std::printf(" %.6f", c);
  std::printf("\nd*(0) = %.6f\n", diagnostics.density_at_zero);
  std::cout << "wrote " << out << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Monte-Carlo delta estimators for the digital option under Black-Scholes"};
  app.require_subcommand(1);

  bool serial = false;
  app.add_flag("--serial", serial, "run all kernels on a single thread");

  CommonFlags flags;

  CLI::App* delta = app.add_subcommand("delta", "single delta estimate for one seed");
  std::string method = "reg";
  delta->add_option("--method", method, "fd | ad | reg | lr | analytic")
      ->check(CLI::IsMember({"fd", "ad", "reg", "lr", "analytic"}))
      ->capture_default_str();
  flags.add_model_options(delta);
  flags.add_width_options(delta);

  CLI::App* table = app.add_subcommand("table", "repeated-seed comparison table");
  std::size_t table_repeats = 1000;
  std::string table_out = "table.csv";
  table->add_option("--repeats", table_repeats, "number of repeated experiments")
      ->envname("STOCHAD_REPEATS")
      ->capture_default_str();
  table->add_option("--out", table_out, "output CSV path")->capture_default_str();
  flags.add_model_options(table);
  flags.add_width_options(table);

  CLI::App* sweep = app.add_subcommand("sweep", "per-seed estimates across widths");
  std::size_t sweep_repeats = 100;
  std::vector<double> widths;
  std::string sweep_out = "sweep.csv";
  sweep->add_option("--widths", widths, "comma separated localization widths")
      ->delimiter(',')
      ->required();
  sweep->add_option("--repeats", sweep_repeats, "number of seeds per width")
      ->envname("STOCHAD_REPEATS")
      ->capture_default_str();
  sweep->add_option("--out", sweep_out, "output CSV path")->capture_default_str();
  flags.add_model_options(sweep);
  flags.add_width_options(sweep);

  CLI::App* density = app.add_subcommand("density", "density-regression sample dump for one seed");
  std::string density_out = "density.csv";
  density->add_option("--out", density_out, "output CSV path")->capture_default_str();
  flags.add_model_options(density);
  flags.add_width_options(density);

  CLI11_PARSE(app, argc, argv);

  if (serial) stochad::kernels::set_execution_mode(stochad::kernels::Exec::Serial);

  try {
    if (app.got_subcommand(delta)) return run_delta(flags, method);
    if (app.got_subcommand(table)) return run_table(flags, table_repeats, table_out);
    if (app.got_subcommand(sweep)) return run_sweep(flags, sweep_repeats, widths, sweep_out);
    if (app.got_subcommand(density)) return run_density(flags, density_out);
  } catch (const stochad::Error& error) {
    std::cerr << "error: " << error.what() << "\n";
    return 1;
  }
  return 0;
}
