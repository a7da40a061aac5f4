#include "ophc/harness.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <limits>
#include <stdexcept>
#include <string>
#include <thread>

#include "ophc/rng.hpp"

namespace ophc {

namespace {

// Stream domains; calibration, fresh-null checks and power never share noise.
enum class Domain : std::uint64_t { null_calibration = 1, null_check = 2, power = 3, fixed_spectrum = 4 };

std::uint64_t cell_seed(std::uint64_t master_seed, Domain domain, std::size_t n, std::size_t q, StatisticForm form,
                        const SigmaSpec& sigma) {
  std::uint64_t h = hash_combine(master_seed, static_cast<std::uint64_t>(domain));
  h = hash_combine(h, n);
  h = hash_combine(h, q);
  h = hash_combine(h, static_cast<std::uint64_t>(form));
  h = hash_combine(h, sigma.is_estimated() ? 0x5157u : 0x4b4eu);
  return h;
}

unsigned resolve_workers(unsigned requested) {
  if (requested != 0) return requested;
  return std::max(1u, std::thread::hardware_concurrency());
}

void check_level(double level) {
  if (!(level > 0.0 && level < 1.0)) throw std::invalid_argument("level must lie in (0, 1)");
}

double null_trial(const NullRequest& request, const RngHandle& handle) {
  const ComplexSeries z = sample_complex_normal(request.n, 1.0, handle);
  TestOptions options;
  options.q = request.q;
  options.sigma = request.sigma.is_estimated() ? SigmaSpec::estimated() : SigmaSpec::known_value(1.0);
  options.form = request.form;
  options.threshold = 0.0;
  return ophc_test(z, options).hc_star;
}

std::vector<double> run_null_batch(const NullRequest& request, Domain domain) {
  if (request.trials < 1) throw std::invalid_argument("null batch: trials must be >= 1");
  if (request.n < 1 || request.q < 1) throw std::invalid_argument("null batch: N and q must be >= 1");
  const std::uint64_t seed = cell_seed(request.master_seed, domain, request.n, request.q, request.form, request.sigma);
  return run_trials(request.trials, request.workers, [&](std::size_t t) {
    return null_trial(request, RngHandle{seed, static_cast<std::uint64_t>(t)});
  });
}

AlternativeParams alternative_params(const ExperimentConfig& config) {
  AlternativeParams params;
  params.p = config.p;
  params.n = config.n;
  params.s = config.r > 0.0 ? config.s : 0;
  params.r = config.r > 0.0 ? config.r : 1.0;
  params.phases = config.phases;
  params.separation = config.separation;
  return params;
}

}  // namespace

void ExperimentConfig::validate() const {
  if (p < 2) throw std::invalid_argument("ExperimentConfig: p must be >= 2");
  if (n < 2) throw std::invalid_argument("ExperimentConfig: N must be >= 2");
  if (static_cast<std::uint64_t>(s) > static_cast<std::uint64_t>(p)) {
    throw std::invalid_argument("ExperimentConfig: s exceeds p");
  }
  if (!(r >= 0.0) || !std::isfinite(r)) throw std::invalid_argument("ExperimentConfig: r must be >= 0");
  if (trials < 1) throw std::invalid_argument("ExperimentConfig: trials must be >= 1");
  check_level(level);
  if (sigma_mode.known && !(*sigma_mode.known > 0.0)) {
    throw std::invalid_argument("ExperimentConfig: known sigma must be positive");
  }
}

std::vector<double> run_trials(std::size_t count, unsigned workers, const std::function<double(std::size_t)>& fn) {
  std::vector<double> results(count, std::numeric_limits<double>::quiet_NaN());
  std::vector<std::exception_ptr> errors(count);
  std::atomic<std::size_t> next{0};
  std::atomic<bool> failed{false};

  auto worker = [&] {
    while (!failed.load(std::memory_order_relaxed)) {
      const std::size_t i = next.fetch_add(1, std::memory_order_relaxed);
      if (i >= count) return;
      try {
        results[i] = fn(i);
      } catch (...) {
        errors[i] = std::current_exception();
        failed.store(true, std::memory_order_relaxed);
      }
    }
  };

  const unsigned threads = std::min<std::size_t>(resolve_workers(workers), std::max<std::size_t>(count, 1));
  if (threads <= 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(threads);
    for (unsigned w = 0; w < threads; ++w) pool.emplace_back(worker);
  }

  for (std::size_t i = 0; i < count; ++i) {
    if (!errors[i]) continue;
    try {
      std::rethrow_exception(errors[i]);
    } catch (const UndefinedStatisticError& e) {
      throw UndefinedStatisticError("trial " + std::to_string(i) + ": " + e.what());
    } catch (const std::exception& e) {
      throw std::runtime_error("trial " + std::to_string(i) + ": " + e.what());
    }
  }
  return results;
}

std::size_t quantile_rank(std::size_t trials, double level) {
  check_level(level);
  if (trials < 1) throw std::invalid_argument("quantile_rank: trials must be >= 1");
  const double position = (1.0 - level) * static_cast<double>(trials);
  auto rank = static_cast<std::size_t>(std::ceil(position - 1e-9));
  return std::clamp<std::size_t>(rank, 1, trials);
}

bool quantile_resolution_ok(std::size_t trials, double level) {
  check_level(level);
  return static_cast<double>(trials) >= 20.0 / level - 1e-9;
}

NullCalibration calibrate_null(const NullRequest& request) {
  check_level(request.level);
  NullCalibration out;
  out.samples = run_null_batch(request, Domain::null_calibration);
  std::vector<double> sorted = out.samples;
  const std::size_t rank = quantile_rank(sorted.size(), request.level);
  std::nth_element(sorted.begin(), sorted.begin() + static_cast<std::ptrdiff_t>(rank - 1), sorted.end());
  out.threshold = sorted[rank - 1];
  return out;
}

double null_rejection_rate(const NullRequest& request, double threshold) {
  const std::vector<double> fresh = run_null_batch(request, Domain::null_check);
  const auto rejections = std::count_if(fresh.begin(), fresh.end(), [threshold](double x) { return x > threshold; });
  return static_cast<double>(rejections) / static_cast<double>(fresh.size());
}

double empirical_pvalue(double observed, std::span<const double> null_samples) {
  if (null_samples.empty()) throw std::invalid_argument("empirical_pvalue: empty null sample set");
  const auto exceed = std::count_if(null_samples.begin(), null_samples.end(),
                                    [observed](double x) { return x >= observed; });
  return (1.0 + static_cast<double>(exceed)) / (static_cast<double>(null_samples.size()) + 1.0);
}

PowerRow estimate_power(const ExperimentConfig& config, double threshold) {
  config.validate();
  const std::size_t q = config.q();
  const AlternativeParams params = alternative_params(config);

  std::optional<SparseSpectrum> fixed;
  if (!config.randomize_spectrum) {
    const RngHandle fixed_stream{cell_seed(config.master_seed, Domain::fixed_spectrum, config.n, q,
                                           config.statistic_form, config.sigma_mode),
                                 0};
    fixed = make_alternative(params, fixed_stream);
  }

  TestOptions options;
  options.q = q;
  options.sigma = config.sigma_mode;
  options.form = config.statistic_form;
  options.threshold = threshold;

  const std::uint64_t seed =
      cell_seed(config.master_seed, Domain::power, config.n, q, config.statistic_form, config.sigma_mode);
  PowerRow row;
  row.q = q;
  row.q_mode = config.q_mode;
  row.sigma_mode = config.sigma_mode;
  row.trials = config.trials;
  row.threshold = threshold;
  row.samples = run_trials(config.trials, config.workers, [&](std::size_t t) {
    const RngHandle trial{seed, static_cast<std::uint64_t>(t)};
    const SparseSpectrum spectrum = fixed ? *fixed : make_alternative(params, trial.child(0));
    const ComplexSeries y = synthesize(spectrum, config.n, 1.0, trial.child(1));
    return ophc_test(y, options).hc_star;
  });
  row.rejections = static_cast<std::size_t>(
      std::count_if(row.samples.begin(), row.samples.end(), [threshold](double x) { return x > threshold; }));
  row.power = static_cast<double>(row.rejections) / static_cast<double>(row.trials);
  return row;
}

Histogram make_histogram(std::span<const std::vector<double>> sample_sets, std::size_t bins) {
  if (bins < 1) throw std::invalid_argument("make_histogram: bins must be >= 1");
  double lo = std::numeric_limits<double>::infinity();
  double hi = -std::numeric_limits<double>::infinity();
  for (const auto& set : sample_sets) {
    for (double x : set) {
      lo = std::min(lo, x);
      hi = std::max(hi, x);
    }
  }
  if (!(lo <= hi)) throw std::invalid_argument("make_histogram: no samples");
  if (lo == hi) {
    lo -= 0.5;
    hi += 0.5;
  }
  Histogram h;
  h.edges.resize(bins + 1);
  const double width = (hi - lo) / static_cast<double>(bins);
  for (std::size_t k = 0; k <= bins; ++k) h.edges[k] = lo + width * static_cast<double>(k);
  h.edges[bins] = hi;
  for (const auto& set : sample_sets) {
    std::vector<std::size_t> counts(bins, 0);
    for (double x : set) {
      auto k = static_cast<std::size_t>((x - lo) / width);
      counts[std::min(k, bins - 1)]++;
    }
    h.counts.push_back(std::move(counts));
  }
  return h;
}

PowerTable compare_q_modes(const ExperimentConfig& base, std::span<const QMode> q_modes,
                           std::span<const SigmaSpec> sigma_modes) {
  base.validate();
  static constexpr QMode kDefaultModes[] = {QMode::simulation, QMode::standard, QMode::full};
  const std::vector<SigmaSpec> kDefaultSigma = {SigmaSpec::known_value(1.0), SigmaSpec::estimated()};
  if (q_modes.empty()) q_modes = kDefaultModes;
  if (sigma_modes.empty()) sigma_modes = kDefaultSigma;

  PowerTable table;
  std::vector<std::string> failures;
  for (QMode mode : q_modes) {
    ExperimentConfig cell = base;
    cell.q_mode = mode;
    QModeCell q_cell;
    q_cell.q_mode = mode;
    try {
      q_cell.q = cell.q();
      NullRequest request;
      request.n = cell.n;
      request.q = q_cell.q;
      request.form = cell.statistic_form;
      request.trials = cell.trials;
      request.level = cell.level;
      request.master_seed = cell.master_seed;
      request.workers = cell.workers;

      std::optional<NullCalibration> known_null;
      std::vector<std::vector<double>> panels;
      for (const SigmaSpec& sigma : sigma_modes) {
        cell.sigma_mode = sigma;
        NullCalibration null;
        if (cell.calibration_sigma == CalibrationSigma::matched && sigma.is_estimated()) {
          NullRequest matched = request;
          matched.sigma = SigmaSpec::estimated();
          null = calibrate_null(matched);
        } else {
          if (!known_null) known_null = calibrate_null(request);
          null = *known_null;
        }
        if (q_cell.null.samples.empty()) q_cell.null = null;
        PowerRow row = estimate_power(cell, null.threshold);
        panels.push_back(row.samples);
        table.rows.push_back(std::move(row));
      }
      panels.insert(panels.begin(), q_cell.null.samples);
      q_cell.histogram = make_histogram(panels);
      table.cells.push_back(std::move(q_cell));
    } catch (const std::exception& e) {
      failures.push_back(std::string(to_string(mode)) + ": " + e.what());
    }
  }
  if (!failures.empty()) {
    std::string message = "compare_q_modes: " + std::to_string(failures.size()) + " cell(s) failed";
    for (const auto& f : failures) message += "\n  " + f;
    throw std::runtime_error(message);
  }
  return table;
}

}  // namespace ophc
