#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "stochad/black_scholes.hpp"
#include "stochad/estimators.hpp"
#include "stochad/regression.hpp"

namespace stochad {

/// A repeated-seed delta study: every estimator is evaluated on the seeds
/// base_seed, base_seed + 1, ..., base_seed + repeats - 1, sharing paths per
/// seed, and summarized by mean / bias / standard deviation.
struct ExperimentConfig {
  BlackScholesParams params{};
  DigitalOption option{};
  std::size_t paths = 200000;
  std::size_t repeats = 1000;
  std::uint64_t base_seed = 3141;
  std::vector<EstimatorSpec> estimators;
};

struct EstimatorStats {
  std::string label;
  double mean = 0.0;
  double bias = 0.0;         ///< mean - analytic reference
  double stddev = 0.0;       ///< population std dev of the per-seed estimates
  double improvement = 0.0;  ///< stddev(FD) / stddev; NaN when not applicable
  std::size_t reported = 0;  ///< seeds that produced an estimate
  std::size_t failures = 0;  ///< seeds excluded (empty window, singular fit)
};

struct ExperimentStats {
  double analytic = 0.0;
  std::size_t paths = 0;
  std::size_t repeats = 0;
  std::vector<EstimatorStats> rows;  ///< one per configured estimator, in order
};

/// Runs the study. Per-seed estimator failures are counted and excluded from
/// the statistics; an estimator failing on more than half of the seeds makes
/// the whole experiment throw. Deterministic for a fixed config regardless
/// of the execution mode or thread count.
ExperimentStats run_experiment(const ExperimentConfig& config);

/// One estimate per (width, seed, estimator). The config's estimators act as
/// a template: for each width the FD shift and the strategy window are
/// rescaled while regression window and order are kept, so the sweep varies
/// exactly the localization width.
struct SweepRow {
  double width = 0.0;
  std::uint64_t seed = 0;
  std::string estimator;
  double delta = 0.0;
};

std::vector<SweepRow> width_sweep(const ExperimentConfig& config,
                                  const std::vector<double>& widths);

/// Raw material behind a density-regression picture: the sample cloud
/// (x_i, d~(x_i)) for the digital trigger S_T - K and the fitted polynomial.
struct DensityDiagnostics {
  DensitySamples samples;
  std::vector<double> coefficients;  ///< basis {1, x, ..., x^(order-1)}
  double density_at_zero = 0.0;      ///< coefficients[0]
};

DensityDiagnostics density_diagnostics(const BlackScholesParams& params,
                                       const DigitalOption& option, std::size_t paths,
                                       std::uint64_t seed, double regression_width, int order);

/// CSV emitters. Fixed six-decimal formatting, '.' decimal point, LF line
/// endings; identical inputs produce byte-identical files.
void write_table_csv(const ExperimentStats& stats, const std::string& path);
void write_sweep_csv(const std::vector<SweepRow>& rows, const std::string& path);
void write_density_csv(const DensityDiagnostics& diagnostics, const std::string& path);

/// Plain-text mirror of the CSV table for standard output.
void print_table(const ExperimentStats& stats, std::ostream& out);

}  // namespace stochad
