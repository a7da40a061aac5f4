#include "cli/commands.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iostream>
#include <sstream>

#include "cli/formats.hpp"
#include "ophc/boundary.hpp"
#include "ophc/version.hpp"

namespace ophc::cli {

namespace fs = std::filesystem;

namespace {

std::ifstream open_input(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open '" + path.string() + "' for reading");
  return in;
}

std::ofstream open_output(const fs::path& path) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open '" + path.string() + "' for writing");
  return out;
}

fs::path with_suffix(const fs::path& path, const std::string& suffix) { return fs::path(path.string() + suffix); }

template <typename Fn>
void emit(const std::optional<fs::path>& path, std::ostream& fallback, Fn&& write) {
  if (path) {
    auto file = open_output(*path);
    write(file);
  } else {
    write(fallback);
  }
}

template <typename Fn>
int guarded(std::ostream& err, Fn&& body) {
  try {
    return body();
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitError;
  }
}

}  // namespace

std::size_t QChoice::resolve(std::size_t n) const {
  if (q) {
    if (*q < 1) throw std::invalid_argument("--q must be >= 1");
    return *q;
  }
  return q_rule(n, mode, p);
}

int cmd_test(const TestArgs& args, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    auto in = open_input(args.series);
    const ComplexSeries y = read_series(in);
    const std::size_t q = args.q.resolve(y.size());

    std::optional<std::vector<double>> null_samples;
    if (args.null_samples) {
      auto samples_in = open_input(*args.null_samples);
      null_samples = read_null_samples(samples_in);
    }

    double threshold = 0.0;
    if (args.threshold) {
      threshold = *args.threshold;
    } else if (args.threshold_file) {
      auto record_in = open_input(*args.threshold_file);
      const ThresholdRecord record = read_threshold_record(record_in);
      if (record.n != y.size() || record.q != q || record.form != args.form) {
        throw std::invalid_argument("threshold record was calibrated for N=" + std::to_string(record.n) +
                                    ", q=" + std::to_string(record.q) + ", form=" +
                                    std::string(to_string(record.form)) + "; series has N=" +
                                    std::to_string(y.size()) + ", q=" + std::to_string(q) + ", form=" +
                                    std::string(to_string(args.form)));
      }
      threshold = record.threshold;
    } else if (args.theory_threshold) {
      threshold = theory_threshold(y.size());
    } else {
      NullRequest request;
      request.n = y.size();
      request.q = q;
      request.form = args.form;
      request.trials = args.trials;
      request.level = args.level;
      request.master_seed = args.seed;
      request.workers = args.workers;
      if (!quantile_resolution_ok(args.trials, args.level)) {
        err << "warning: " << args.trials << " trials give a coarse " << (1.0 - args.level) << " quantile\n";
      }
      NullCalibration calibration = calibrate_null(request);
      threshold = calibration.threshold;
      if (!null_samples) null_samples = std::move(calibration.samples);
    }

    TestOptions options;
    options.q = q;
    options.sigma = args.sigma;
    options.form = args.form;
    options.threshold = threshold;
    HCResult result = ophc_test(y, options);
    if (null_samples) result.empirical_pvalue = empirical_pvalue(result.hc_star, *null_samples);
    write_hc_result(out, result);
    return result.reject ? kExitReject : kExitAccept;
  });
}

int cmd_calibrate(const CalibrateArgs& args, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    if (args.out.empty()) throw std::invalid_argument("calibrate: --out is required");
    NullRequest request;
    request.n = args.n;
    request.q = args.q.resolve(args.n);
    request.form = args.form;
    request.trials = args.trials;
    request.level = args.level;
    request.master_seed = args.seed;
    request.workers = args.workers;
    if (!quantile_resolution_ok(args.trials, args.level)) {
      err << "warning: " << args.trials << " trials give a coarse " << (1.0 - args.level)
          << " quantile; at least " << std::ceil(20.0 / args.level) << " recommended\n";
    }
    const NullCalibration calibration = calibrate_null(request);

    ThresholdRecord record;
    record.n = request.n;
    record.q = request.q;
    record.form = request.form;
    record.level = request.level;
    record.threshold = calibration.threshold;
    record.trials = request.trials;
    record.seed = request.master_seed;
    {
      auto file = open_output(args.out);
      write_threshold_record(file, record);
    }
    {
      auto file = open_output(with_suffix(args.out, ".samples.csv"));
      write_null_samples(file, calibration.samples);
    }
    {
      auto file = open_output(with_suffix(args.out, ".hist.csv"));
      const std::vector<std::vector<double>> sets{calibration.samples};
      write_histogram(file, make_histogram(sets), {"null"});
    }
    write_threshold_record(out, record);
    return kExitAccept;
  });
}

int cmd_power(const PowerArgs& args, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const PowerTable table = compare_q_modes(args.config, args.q_modes, args.sigma_modes);
    emit(args.out, out, [&](std::ostream& os) { write_power_table(os, table.rows); });
    if (args.out) {
      auto file = open_output(with_suffix(*args.out, ".config"));
      write_experiment_config(file, args.config);
    } else {
      std::ostringstream doc;
      write_experiment_config(doc, args.config);
      std::istringstream lines(doc.str());
      for (std::string line; std::getline(lines, line);) err << "# " << line << '\n';
    }
    if (args.hist_dir) {
      for (const auto& cell : table.cells) {
        std::vector<std::string> names{"null"};
        for (const auto& row : table.rows) {
          if (row.q_mode == cell.q_mode) names.push_back(row.sigma_mode.is_estimated() ? "alt_estimated" : "alt_known");
        }
        auto file = open_output(*args.hist_dir / ("hist_q" + std::to_string(cell.q) + ".csv"));
        write_histogram(file, cell.histogram, names);
      }
    }
    return kExitAccept;
  });
}

int cmd_boundary(const BoundaryArgs& args, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    std::vector<double> alphas = args.alphas;
    if (alphas.empty()) {
      if (!(args.alpha_step > 0.0)) throw std::invalid_argument("boundary: --alpha-step must be positive");
      const double lo = args.alpha_min.value_or(std::max(0.5, (1.0 + args.gamma) / 2.0) + args.alpha_step);
      const auto steps = static_cast<std::size_t>(std::floor((args.alpha_max - lo) / args.alpha_step + 1e-9));
      for (std::size_t k = 0; k <= steps; ++k) alphas.push_back(lo + static_cast<double>(k) * args.alpha_step);
    }
    const auto rows = boundary_curve(args.gamma, alphas);
    emit(args.out, out, [&](std::ostream& os) { write_boundary(os, rows); });
    return kExitAccept;
  });
}

int cmd_complexify(const ComplexifyArgs& args, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    auto in = open_input(args.input);
    const std::vector<double> u = read_real_column(in);
    const ComplexSeries y = complexify(u);
    emit(args.out, out, [&](std::ostream& os) { write_series(os, y); });
    return kExitAccept;
  });
}

int cmd_simulate(const SimulateArgs& args, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    AlternativeParams params;
    params.p = args.p;
    params.n = args.n;
    params.s = args.s;
    params.phases = args.phases;
    params.separation = args.separation;
    if (args.amplitude) {
      if (!(*args.amplitude > 0.0)) throw std::invalid_argument("simulate: --amplitude must be positive");
      const double pd = static_cast<double>(args.p);
      params.r = (*args.amplitude) * (*args.amplitude) * static_cast<double>(args.n) / (pd * std::log(pd));
    } else {
      params.r = args.r;
    }
    const RngHandle root{args.seed, 0};
    const SparseSpectrum spectrum = (params.s == 0 || params.r == 0.0) ? SparseSpectrum::null(params.p)
                                                                       : make_alternative(params, root.child(0));
    const ComplexSeries y = synthesize(spectrum, args.n, args.sigma, root.child(1));
    emit(args.out, out, [&](std::ostream& os) { write_series(os, y); });
    if (args.spectrum_out) {
      auto file = open_output(*args.spectrum_out);
      write_spectrum(file, spectrum);
    }
    return kExitAccept;
  });
}

int cmd_periodogram(const PeriodogramArgs& args, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    auto in = open_input(args.series);
    const ComplexSeries y = read_series(in);
    const double sigma = args.sigma.known ? *args.sigma.known : estimate_sigma(y);
    const Periodogram periodogram = oversampled_transform(y.scaled(1.0 / sigma), args.q.resolve(y.size()));
    emit(args.out, out, [&](std::ostream& os) { write_periodogram(os, periodogram); });
    return kExitAccept;
  });
}

namespace {

// CLI11 validators for the enum-like flags.
struct Choices {
  std::string q_mode = "simulation";
  std::string sigma = "known:1";
  std::string form = "pvalue";
};

QMode to_q_mode(const std::string& text) {
  auto mode = parse_q_mode(text);
  if (!mode) throw std::invalid_argument("unknown q mode '" + text + "'");
  return *mode;
}

SigmaSpec to_sigma(const std::string& text) {
  auto sigma = parse_sigma_spec(text);
  if (!sigma) throw std::invalid_argument("bad --sigma '" + text + "' (use known:VALUE or estimated)");
  return *sigma;
}

StatisticForm to_form(const std::string& text) {
  auto form = parse_statistic_form(text);
  if (!form) throw std::invalid_argument("bad --form '" + text + "' (use interval or pvalue)");
  return *form;
}

std::vector<std::string> split_list(const std::string& text) {
  std::vector<std::string> items;
  std::stringstream ss(text);
  for (std::string item; std::getline(ss, item, ',');) {
    if (!item.empty()) items.push_back(item);
  }
  return items;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Over-sampled periodogram higher criticism: sparse periodicity detection"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(kVersion));

  Choices choices;
  std::optional<std::size_t> q_value;
  std::optional<std::int64_t> p_value;
  std::string series_path;
  std::string out_path;

  // test
  TestArgs test;
  std::string threshold_file;
  std::string null_samples;
  auto* test_cmd = app.add_subcommand("test", "Run the test on a series file");
  test_cmd->add_option("series", series_path, "Series CSV (index,re,im)")->required();
  test_cmd->add_option("--q", q_value, "Transform length");
  test_cmd->add_option("--q-mode", choices.q_mode, "theory | simulation | standard | full");
  test_cmd->add_option("--p", p_value, "Grid size (q-mode full)");
  test_cmd->add_option("--sigma", choices.sigma, "known:VALUE | estimated");
  test_cmd->add_option("--form", choices.form, "pvalue | interval");
  test_cmd->add_option("--threshold", test.threshold, "Explicit decision threshold");
  test_cmd->add_option("--threshold-file", threshold_file, "Threshold record from 'calibrate'");
  test_cmd->add_flag("--theory-threshold", test.theory_threshold, "Use ln^2(N)");
  test_cmd->add_option("--null-samples", null_samples, "Null samples CSV for the empirical p-value");
  test_cmd->add_option("--trials", test.trials, "Null trials when calibrating on the fly");
  test_cmd->add_option("--level", test.level, "Test level for on-the-fly calibration");
  test_cmd->add_option("--seed", test.seed, "Master seed");
  test_cmd->add_option("--workers", test.workers, "Worker threads (0 = all cores)");

  // calibrate
  CalibrateArgs calibrate;
  auto* calibrate_cmd = app.add_subcommand("calibrate", "Monte Carlo null calibration");
  calibrate_cmd->add_option("--n", calibrate.n, "Series length N");
  calibrate_cmd->add_option("--q", q_value, "Transform length");
  calibrate_cmd->add_option("--q-mode", choices.q_mode, "theory | simulation | standard | full");
  calibrate_cmd->add_option("--p", p_value, "Grid size (q-mode full)");
  calibrate_cmd->add_option("--form", choices.form, "pvalue | interval");
  calibrate_cmd->add_option("--trials", calibrate.trials, "Null trials B");
  calibrate_cmd->add_option("--level", calibrate.level, "Test level");
  calibrate_cmd->add_option("--seed", calibrate.seed, "Master seed");
  calibrate_cmd->add_option("--out", out_path, "Threshold record path")->required();
  calibrate_cmd->add_option("--workers", calibrate.workers, "Worker threads (0 = all cores)");

  // power
  PowerArgs power;
  power.config.master_seed = kDefaultSeed;
  std::string q_modes;
  std::string sigma_modes;
  std::string separation = "none";
  std::string hist_dir;
  auto* power_cmd = app.add_subcommand("power", "Power comparison across q choices");
  power_cmd->add_option("--p", power.config.p, "Grid size p");
  power_cmd->add_option("--n", power.config.n, "Series length N");
  power_cmd->add_option("--s", power.config.s, "Sparsity s");
  power_cmd->add_option("--r", power.config.r, "Signal strength r");
  power_cmd->add_option("--q-modes", q_modes, "Comma list of simulation,standard,full,theory");
  power_cmd->add_option("--sigma-modes", sigma_modes, "Comma list of known,estimated");
  power_cmd->add_option("--form", choices.form, "pvalue | interval");
  power_cmd->add_option("--level", power.config.level, "Test level");
  power_cmd->add_option("--trials", power.config.trials, "Trials B per cell");
  power_cmd->add_option("--seed", power.config.master_seed, "Master seed");
  power_cmd->add_option("--separation", separation, "none | theory");
  power_cmd->add_option("--out", out_path, "Power table CSV (default stdout)");
  power_cmd->add_option("--hist-dir", hist_dir, "Directory for per-q histogram CSVs");
  power_cmd->add_option("--workers", power.config.workers, "Worker threads (0 = all cores)");

  // boundary
  BoundaryArgs boundary;
  std::string alpha_list;
  auto* boundary_cmd = app.add_subcommand("boundary", "Detection boundary curves");
  boundary_cmd->add_option("--gamma", boundary.gamma, "gamma in [0, 1)");
  boundary_cmd->add_option("--alpha-min", boundary.alpha_min, "First alpha");
  boundary_cmd->add_option("--alpha-max", boundary.alpha_max, "Last alpha");
  boundary_cmd->add_option("--alpha-step", boundary.alpha_step, "Grid step");
  boundary_cmd->add_option("--alphas", alpha_list, "Explicit comma list of alphas");
  boundary_cmd->add_option("--out", out_path, "CSV path (default stdout)");

  // complexify
  ComplexifyArgs complexify_args;
  std::string input_path;
  auto* complexify_cmd = app.add_subcommand("complexify", "Real series of length 2n to complex series of length n");
  complexify_cmd->add_option("input", input_path, "Single-column real series")->required();
  complexify_cmd->add_option("--out", out_path, "Series CSV (default stdout)");

  // simulate
  SimulateArgs simulate;
  std::string sim_separation = "none";
  bool fixed_phase = false;
  auto* simulate_cmd = app.add_subcommand("simulate", "Draw a series from the sparse-spectrum model");
  simulate_cmd->add_option("--p", simulate.p, "Grid size p");
  simulate_cmd->add_option("--n", simulate.n, "Series length N");
  simulate_cmd->add_option("--s", simulate.s, "Sparsity s (0 = null)");
  simulate_cmd->add_option("--r", simulate.r, "Signal strength r");
  simulate_cmd->add_option("--amplitude", simulate.amplitude, "Common modulus A (overrides --r)");
  simulate_cmd->add_option("--sigma", simulate.sigma, "Noise scale");
  simulate_cmd->add_option("--separation", sim_separation, "none | theory");
  simulate_cmd->add_flag("--fixed-phase", fixed_phase, "Real positive amplitudes");
  simulate_cmd->add_option("--seed", simulate.seed, "Seed");
  simulate_cmd->add_option("--out", out_path, "Series CSV (default stdout)");
  std::string spectrum_out;
  simulate_cmd->add_option("--spectrum-out", spectrum_out, "Write the drawn spectrum record");

  // periodogram
  PeriodogramArgs periodogram;
  auto* periodogram_cmd = app.add_subcommand("periodogram", "Export the over-sampled periodogram");
  periodogram_cmd->add_option("series", series_path, "Series CSV")->required();
  periodogram_cmd->add_option("--q", q_value, "Transform length");
  periodogram_cmd->add_option("--q-mode", choices.q_mode, "theory | simulation | standard | full");
  periodogram_cmd->add_option("--p", p_value, "Grid size (q-mode full)");
  periodogram_cmd->add_option("--sigma", choices.sigma, "known:VALUE | estimated");
  periodogram_cmd->add_option("--out", out_path, "CSV path (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForVersion&) {
    out << kVersion << '\n';
    return 0;
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      out << app.help();
      return 0;
    }
    err << "error: " << e.what() << '\n';
    return kExitError;
  }

  const auto opt_path = [](const std::string& s) -> std::optional<fs::path> {
    if (s.empty()) return std::nullopt;
    return fs::path(s);
  };

  try {
    const QChoice q_choice{q_value, to_q_mode(choices.q_mode), p_value};
    if (*test_cmd) {
      test.series = series_path;
      test.q = q_choice;
      test.sigma = to_sigma(choices.sigma);
      test.form = to_form(choices.form);
      test.threshold_file = opt_path(threshold_file);
      test.null_samples = opt_path(null_samples);
      return cmd_test(test, out, err);
    }
    if (*calibrate_cmd) {
      calibrate.q = q_choice;
      calibrate.form = to_form(choices.form);
      calibrate.out = out_path;
      return cmd_calibrate(calibrate, out, err);
    }
    if (*power_cmd) {
      power.config.statistic_form = to_form(choices.form);
      if (separation == "theory") {
        power.config.separation = SeparationRule::theory;
      } else if (separation != "none") {
        throw std::invalid_argument("bad --separation '" + separation + "'");
      }
      for (const auto& m : split_list(q_modes)) power.q_modes.push_back(to_q_mode(m));
      for (const auto& m : split_list(sigma_modes)) power.sigma_modes.push_back(to_sigma(m));
      power.out = opt_path(out_path);
      power.hist_dir = opt_path(hist_dir);
      return cmd_power(power, out, err);
    }
    if (*boundary_cmd) {
      for (const auto& a : split_list(alpha_list)) boundary.alphas.push_back(parse_double(a));
      boundary.out = opt_path(out_path);
      return cmd_boundary(boundary, out, err);
    }
    if (*complexify_cmd) {
      complexify_args.input = input_path;
      complexify_args.out = opt_path(out_path);
      return cmd_complexify(complexify_args, out, err);
    }
    if (*simulate_cmd) {
      if (sim_separation == "theory") {
        simulate.separation = SeparationRule::theory;
      } else if (sim_separation != "none") {
        throw std::invalid_argument("bad --separation '" + sim_separation + "'");
      }
      if (fixed_phase) simulate.phases = PhaseMode::fixed;
      simulate.out = opt_path(out_path);
      simulate.spectrum_out = opt_path(spectrum_out);
      return cmd_simulate(simulate, out, err);
    }
    if (*periodogram_cmd) {
      periodogram.series = series_path;
      periodogram.q = q_choice;
      periodogram.sigma = to_sigma(choices.sigma);
      periodogram.out = opt_path(out_path);
      return cmd_periodogram(periodogram, out, err);
    }
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitError;
  }
  return kExitError;
}

}  // namespace ophc::cli
