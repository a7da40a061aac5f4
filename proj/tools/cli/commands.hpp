#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "ophc/harness.hpp"
#include "ophc/hc_test.hpp"
#include "ophc/periodogram.hpp"
#include "ophc/signal_model.hpp"

namespace ophc::cli {

inline constexpr int kExitAccept = 0;
inline constexpr int kExitReject = 1;
inline constexpr int kExitError = 2;

inline constexpr std::uint64_t kDefaultSeed = 20160601;

/// q from an explicit value or a mode; `full` needs p.
struct QChoice {
  std::optional<std::size_t> q;
  QMode mode = QMode::simulation;
  std::optional<std::int64_t> p;

  [[nodiscard]] std::size_t resolve(std::size_t n) const;
};

struct TestArgs {
  std::filesystem::path series;
  QChoice q;
  SigmaSpec sigma = SigmaSpec::known_value(1.0);
  StatisticForm form = StatisticForm::pvalue;
  std::optional<double> threshold;
  std::optional<std::filesystem::path> threshold_file;
  bool theory_threshold = false;
  std::optional<std::filesystem::path> null_samples;
  /// On-the-fly calibration when no threshold source is given.
  std::size_t trials = 1000;
  double level = 0.05;
  std::uint64_t seed = kDefaultSeed;
  unsigned workers = 0;
};

struct CalibrateArgs {
  std::size_t n = 1000;
  QChoice q;
  StatisticForm form = StatisticForm::pvalue;
  std::size_t trials = 1000;
  double level = 0.05;
  std::uint64_t seed = kDefaultSeed;
  std::filesystem::path out;
  unsigned workers = 0;
};

struct PowerArgs {
  ExperimentConfig config;
  std::vector<QMode> q_modes;
  std::vector<SigmaSpec> sigma_modes;
  std::optional<std::filesystem::path> out;
  std::optional<std::filesystem::path> hist_dir;
};

struct BoundaryArgs {
  double gamma = 0.3;
  std::optional<double> alpha_min;
  double alpha_max = 0.999;
  double alpha_step = 0.001;
  std::vector<double> alphas;
  std::optional<std::filesystem::path> out;
};

struct ComplexifyArgs {
  std::filesystem::path input;
  std::optional<std::filesystem::path> out;
};

struct SimulateArgs {
  std::int64_t p = 1'000'000;
  std::size_t n = 1000;
  std::size_t s = 20;
  double r = 0.3;
  /// Overrides r with the common modulus A directly.
  std::optional<double> amplitude;
  double sigma = 1.0;
  SeparationRule separation = SeparationRule::none;
  PhaseMode phases = PhaseMode::uniform;
  std::uint64_t seed = kDefaultSeed;
  std::optional<std::filesystem::path> out;
  std::optional<std::filesystem::path> spectrum_out;
};

struct PeriodogramArgs {
  std::filesystem::path series;
  QChoice q;
  SigmaSpec sigma = SigmaSpec::known_value(1.0);
  std::optional<std::filesystem::path> out;
};

/// Exit 0 = accept, 1 = reject, 2 = error. Prints the HCResult record to `out`.
int cmd_test(const TestArgs& args, std::ostream& out, std::ostream& err);
/// Writes the threshold record to args.out plus `<out>.samples.csv` and `<out>.hist.csv`.
int cmd_calibrate(const CalibrateArgs& args, std::ostream& out, std::ostream& err);
/// Power table CSV to args.out (or `out`); config record to `<out>.config`.
int cmd_power(const PowerArgs& args, std::ostream& out, std::ostream& err);
int cmd_boundary(const BoundaryArgs& args, std::ostream& out, std::ostream& err);
int cmd_complexify(const ComplexifyArgs& args, std::ostream& out, std::ostream& err);
int cmd_simulate(const SimulateArgs& args, std::ostream& out, std::ostream& err);
int cmd_periodogram(const PeriodogramArgs& args, std::ostream& out, std::ostream& err);

/// Entry point shared by the executable and the tests.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace ophc::cli
