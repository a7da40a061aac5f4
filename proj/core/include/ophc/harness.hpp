#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "ophc/hc_test.hpp"
#include "ophc/periodogram.hpp"
#include "ophc/signal_model.hpp"

namespace ophc {

/// How the null used for calibration normalizes its series.
enum class CalibrationSigma {
  known,    // sigma = 1, regardless of the power cell's sigma mode
  matched,  // same sigma mode as the power cell
};

struct ExperimentConfig {
  std::int64_t p = 1'000'000;
  std::size_t n = 1000;
  std::size_t s = 20;
  double r = 0.3;
  QMode q_mode = QMode::simulation;
  SigmaSpec sigma_mode = SigmaSpec::known_value(1.0);
  StatisticForm statistic_form = StatisticForm::pvalue;
  std::size_t trials = 1000;
  double level = 0.05;
  std::uint64_t master_seed = 20160601;

  SeparationRule separation = SeparationRule::none;
  PhaseMode phases = PhaseMode::uniform;
  /// false: one spectrum drawn up front and reused by every trial.
  bool randomize_spectrum = true;
  CalibrationSigma calibration_sigma = CalibrationSigma::known;
  /// 0 = hardware concurrency.
  unsigned workers = 0;

  [[nodiscard]] std::size_t q() const { return q_rule(n, q_mode, p); }
  /// Throws std::invalid_argument on inconsistent fields.
  void validate() const;
};

struct NullRequest {
  std::size_t n = 1000;
  std::size_t q = 14000;
  StatisticForm form = StatisticForm::pvalue;
  std::size_t trials = 1000;
  double level = 0.05;
  std::uint64_t master_seed = 20160601;
  SigmaSpec sigma = SigmaSpec::known_value(1.0);
  unsigned workers = 0;
};

struct NullCalibration {
  double threshold = 0.0;
  /// HC* per trial, in trial order.
  std::vector<double> samples;
};

/// 1-based order statistic used as the (1 - level) quantile: ceil((1 - level) B).
[[nodiscard]] std::size_t quantile_rank(std::size_t trials, double level);

/// False when B < 20 / level, i.e. too few trials to resolve the quantile.
[[nodiscard]] bool quantile_resolution_ok(std::size_t trials, double level);

/// Simulates B null series (sigma = 1), computes HC* for each and returns the
/// empirical (1 - level) quantile. Trial t draws from stream index t.
[[nodiscard]] NullCalibration calibrate_null(const NullRequest& request);

/// Fraction of a fresh null batch (stream range disjoint from calibration)
/// with HC* > threshold.
[[nodiscard]] double null_rejection_rate(const NullRequest& request, double threshold);

/// (1 + #{null >= observed}) / (B + 1).
[[nodiscard]] double empirical_pvalue(double observed, std::span<const double> null_samples);

struct PowerRow {
  std::size_t q = 0;
  QMode q_mode = QMode::simulation;
  SigmaSpec sigma_mode = SigmaSpec::known_value(1.0);
  std::size_t trials = 0;
  std::size_t rejections = 0;
  double power = 0.0;
  double threshold = 0.0;
  /// HC* per alternative trial, in trial order.
  std::vector<double> samples;
};

/// Draws a fresh alternative and noise per trial, runs the test against
/// `threshold` and tallies rejections.
[[nodiscard]] PowerRow estimate_power(const ExperimentConfig& config, double threshold);

struct Histogram {
  /// bins + 1 edges, equal width over the pooled sample range.
  std::vector<double> edges;
  /// One count vector per input sample set.
  std::vector<std::vector<std::size_t>> counts;
};

inline constexpr std::size_t kHistogramBins = 50;

[[nodiscard]] Histogram make_histogram(std::span<const std::vector<double>> sample_sets,
                                       std::size_t bins = kHistogramBins);

struct QModeCell {
  QMode q_mode = QMode::simulation;
  std::size_t q = 0;
  NullCalibration null;
  /// Null, then one alternative sample set per sigma mode, over shared bins.
  Histogram histogram;
};

struct PowerTable {
  std::vector<PowerRow> rows;
  std::vector<QModeCell> cells;
};

/// Default comparison: simulation, standard and full q x {known, estimated} sigma.
[[nodiscard]] PowerTable compare_q_modes(const ExperimentConfig& base,
                                         std::span<const QMode> q_modes = {},
                                         std::span<const SigmaSpec> sigma_modes = {});

/// Runs fn(0..count-1) over `workers` threads and returns results in index
/// order. The first failing index (lowest) is rethrown after all workers stop.
[[nodiscard]] std::vector<double> run_trials(std::size_t count, unsigned workers,
                                             const std::function<double(std::size_t)>& fn);

}  // namespace ophc
