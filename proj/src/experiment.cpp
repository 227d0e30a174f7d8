#include "stochad/experiment.hpp"

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <limits>
#include <ostream>
#include <string>

#include "stochad/errors.hpp"
#include "stochad/kernels.hpp"

namespace stochad {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

// Estimates for every (repeat, estimator) pair, NaN where the estimator
// failed on that seed. Repeats fan out over threads; each slot is written
// exactly once, so the gathered matrix is identical for any thread count.
std::vector<double> evaluate_matrix(const ExperimentConfig& config,
                                    const std::vector<EstimatorSpec>& specs) {
  const std::int64_t repeats = static_cast<std::int64_t>(config.repeats);
  const std::size_t columns = specs.size();
  std::vector<double> estimates(config.repeats * columns, kNaN);

  auto run_one = [&](std::int64_t k) {
    const std::uint64_t seed = config.base_seed + static_cast<std::uint64_t>(k);
    const RandomVariable factor = terminal_factor(config.params, config.paths, seed);
    for (std::size_t j = 0; j < columns; ++j) {
      try {
        estimates[static_cast<std::size_t>(k) * columns + j] =
            estimate_delta_on_paths(specs[j], config.params, config.option, factor);
      } catch (const Error&) {
        // leave NaN; accounted for by the caller
      }
    }
  };

  if (kernels::execution_mode() == kernels::Exec::Parallel) {
#pragma omp parallel for schedule(dynamic)
    for (std::int64_t k = 0; k < repeats; ++k) run_one(k);
  } else {
    for (std::int64_t k = 0; k < repeats; ++k) run_one(k);
  }
  return estimates;
}

void check_failure_rate(const EstimatorSpec& spec, std::size_t failures, std::size_t repeats) {
  if (failures * 2 > repeats) {
    throw Error("experiment: estimator '" + spec.label + "' failed on " +
                std::to_string(failures) + " of " + std::to_string(repeats) + " seeds");
  }
}

std::string format_fixed(double v) {
  char buffer[64];
  std::snprintf(buffer, sizeof buffer, "%.6f", v);
  std::string text = buffer;
  if (text == "-0.000000") text.erase(0, 1);  // round-off below the printed precision
  return text;
}

std::ofstream open_output(const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot open output file: " + path);
  return out;
}

}  // namespace

ExperimentStats run_experiment(const ExperimentConfig& config) {
  if (config.repeats < 1) throw Error("run_experiment: repeats must be >= 1");
  if (config.paths < 2) throw Error("run_experiment: paths must be >= 2");
  if (config.estimators.empty()) throw Error("run_experiment: no estimators configured");
  if (config.repeats == 1) {
    std::cerr << "warning: repeats == 1, standard deviations are reported as 0\n";
  }

  const std::vector<double> estimates = evaluate_matrix(config, config.estimators);
  const std::size_t columns = config.estimators.size();

  ExperimentStats stats;
  stats.analytic = analytic_digital_delta(config.params, config.option.strike);
  stats.paths = config.paths;
  stats.repeats = config.repeats;
  stats.rows.resize(columns);

  for (std::size_t j = 0; j < columns; ++j) {
    EstimatorStats& row = stats.rows[j];
    row.label = config.estimators[j].label;
    double sum = 0.0;
    double sum_sq = 0.0;
    for (std::size_t k = 0; k < config.repeats; ++k) {
      const double v = estimates[k * columns + j];
      if (std::isnan(v)) {
        ++row.failures;
        continue;
      }
      ++row.reported;
      sum += v;
      sum_sq += v * v;
    }
    check_failure_rate(config.estimators[j], row.failures, config.repeats);
    const double n = static_cast<double>(row.reported);
    row.mean = sum / n;
    row.bias = row.mean - stats.analytic;
    // Population variance; a spread at the round-off floor of the one-pass
    // formula (seeds agreeing to machine precision, e.g. the analytic row)
    // is reported as exactly zero.
    const double spread = sum_sq / n - row.mean * row.mean;
    const double floor = sum_sq / n * 1e-13;
    row.stddev = row.reported > 1 && spread > floor ? std::sqrt(spread) : 0.0;
  }

  // Improvement is relative to the finite-difference row; the FD row itself
  // (and every row when no FD estimator is configured) is left blank.
  std::size_t fd_index = columns;
  for (std::size_t j = 0; j < columns; ++j) {
    if (config.estimators[j].kind == EstimatorSpec::Kind::FiniteDifference) {
      fd_index = j;
      break;
    }
  }
  for (std::size_t j = 0; j < columns; ++j) {
    stats.rows[j].improvement = (fd_index == columns || j == fd_index)
                                    ? kNaN
                                    : stats.rows[fd_index].stddev / stats.rows[j].stddev;
  }
  return stats;
}

std::vector<SweepRow> width_sweep(const ExperimentConfig& config,
                                  const std::vector<double>& widths) {
  if (widths.empty()) throw Error("width_sweep: widths must be nonempty");
  std::vector<SweepRow> rows;
  rows.reserve(widths.size() * config.repeats * config.estimators.size());

  for (const double width : widths) {
    std::vector<EstimatorSpec> specs = config.estimators;
    for (EstimatorSpec& spec : specs) {
      spec.shift = width;
      spec.strategy.width = width;
    }
    const std::vector<double> estimates = evaluate_matrix(config, specs);
    std::vector<std::size_t> failures(specs.size(), 0);
    for (std::size_t k = 0; k < config.repeats; ++k) {
      for (std::size_t j = 0; j < specs.size(); ++j) {
        const double v = estimates[k * specs.size() + j];
        if (std::isnan(v)) {
          ++failures[j];
          continue;
        }
        rows.push_back({width, config.base_seed + k, specs[j].label, v});
      }
    }
    for (std::size_t j = 0; j < specs.size(); ++j) {
      check_failure_rate(specs[j], failures[j], config.repeats);
    }
  }
  return rows;
}

DensityDiagnostics density_diagnostics(const BlackScholesParams& params,
                                       const DigitalOption& option, std::size_t paths,
                                       std::uint64_t seed, double regression_width, int order) {
  if (order < 1) throw Error("density_diagnostics: order must be >= 1");
  if (!(regression_width > 0.0)) {
    throw Error("density_diagnostics: regression width must be positive");
  }
  const RandomVariable trigger =
      params.initial_value * terminal_factor(params, paths, seed) - option.strike;
  const double half_width = 0.5 * regression_width * standard_deviation(trigger);

  DensityDiagnostics diagnostics;
  diagnostics.samples = empirical_density_samples(trigger, half_width);
  diagnostics.coefficients =
      fit_polynomial(diagnostics.samples.x, diagnostics.samples.y, 0, order);
  diagnostics.density_at_zero = diagnostics.coefficients.front();
  return diagnostics;
}

void write_table_csv(const ExperimentStats& stats, const std::string& path) {
  std::ofstream out = open_output(path);
  out << "Method,Value,Bias,StdDev,Improve\n";
  for (const EstimatorStats& row : stats.rows) {
    out << row.label << ',' << format_fixed(row.mean) << ',' << format_fixed(row.bias) << ','
        << format_fixed(row.stddev) << ','
        << (std::isnan(row.improvement) ? std::string{} : format_fixed(row.improvement)) << '\n';
  }
}

void write_sweep_csv(const std::vector<SweepRow>& rows, const std::string& path) {
  std::ofstream out = open_output(path);
  out << "width,seed,estimator,delta\n";
  for (const SweepRow& row : rows) {
    out << format_fixed(row.width) << ',' << row.seed << ',' << row.estimator << ','
        << format_fixed(row.delta) << '\n';
  }
}

void write_density_csv(const DensityDiagnostics& diagnostics, const std::string& path) {
  std::ofstream out = open_output(path);
  out << "x,d_tilde,d_star,d_star_at_zero\n";
  const std::string at_zero = format_fixed(diagnostics.density_at_zero);
  for (std::size_t i = 0; i < diagnostics.samples.x.size(); ++i) {
    const double fitted =
        evaluate_polynomial(diagnostics.coefficients, 0, diagnostics.samples.x[i]);
    out << format_fixed(diagnostics.samples.x[i]) << ',' << format_fixed(diagnostics.samples.y[i])
        << ',' << format_fixed(fitted) << ',' << at_zero << '\n';
  }
}

void print_table(const ExperimentStats& stats, std::ostream& out) {
  out << "paths=" << stats.paths << " repeats=" << stats.repeats
      << " analytic=" << format_fixed(stats.analytic) << "\n";
  out << std::left << std::setw(28) << "Method" << std::right << std::setw(10) << "Value"
      << std::setw(10) << "Bias" << std::setw(10) << "StdDev" << std::setw(10) << "Improve"
      << "\n";
  for (const EstimatorStats& row : stats.rows) {
    out << std::left << std::setw(28) << row.label << std::right << std::setw(10)
        << format_fixed(row.mean) << std::setw(10) << format_fixed(row.bias) << std::setw(10)
        << format_fixed(row.stddev) << std::setw(10)
        << (std::isnan(row.improvement) ? std::string{} : format_fixed(row.improvement)) << "\n";
  }
  for (const EstimatorStats& row : stats.rows) {
    if (row.failures > 0) {
      out << "note: " << row.label << ": " << row.failures << " of " << stats.repeats
          << " seeds failed and were excluded\n";
    }
  }
}

}  // namespace stochad
