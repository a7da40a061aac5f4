#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "ophc/boundary.hpp"
#include "ophc/complex_math.hpp"
#include "ophc/harness.hpp"
#include "ophc/hc_test.hpp"
#include "ophc/periodogram.hpp"
#include "ophc/signal_model.hpp"

namespace ophc::cli {

/// Malformed input file; the message carries the 1-based line number.
class FormatError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Series file: header "index,re,im", rows 1..N, 17 significant digits.
void write_series(std::ostream& out, const ComplexSeries& y);
[[nodiscard]] ComplexSeries read_series(std::istream& in);

/// One real value per line; an optional non-numeric first line is a header.
[[nodiscard]] std::vector<double> read_real_column(std::istream& in);

/// key=value lines; blank lines and '#' comments ignored.
using Record = std::map<std::string, std::string>;
void write_record(std::ostream& out, const std::vector<std::pair<std::string, std::string>>& fields);
[[nodiscard]] Record read_record(std::istream& in);

struct ThresholdRecord {
  std::size_t n = 0;
  std::size_t q = 0;
  StatisticForm form = StatisticForm::pvalue;
  double level = 0.05;
  double threshold = 0.0;
  std::size_t trials = 0;
  std::uint64_t seed = 0;
};
void write_threshold_record(std::ostream& out, const ThresholdRecord& record);
[[nodiscard]] ThresholdRecord read_threshold_record(std::istream& in);

/// "trial,hc_star".
void write_null_samples(std::ostream& out, const std::vector<double>& samples);
[[nodiscard]] std::vector<double> read_null_samples(std::istream& in);

/// "bin,lower,upper,<name>..." with one count column per sample set.
void write_histogram(std::ostream& out, const Histogram& histogram, const std::vector<std::string>& names);

/// "q,q_mode,sigma_mode,trials,rejections,power,threshold".
void write_power_table(std::ostream& out, const std::vector<PowerRow>& rows);

/// "alpha,rho_star,rho_star_gamma".
void write_boundary(std::ostream& out, const std::vector<BoundaryRow>& rows);

/// "m,re_v,im_v,I" with 1-based m.
void write_periodogram(std::ostream& out, const Periodogram& periodogram);

/// Flat key=value record of an HCResult.
void write_hc_result(std::ostream& out, const HCResult& result);

/// "p=<p>" line, then "tau,re,im" rows.
void write_spectrum(std::ostream& out, const SparseSpectrum& spectrum);
[[nodiscard]] SparseSpectrum read_spectrum(std::istream& in);

/// ExperimentConfig as key=value with the config's field names, stamped with
/// the library version.
void write_experiment_config(std::ostream& out, const ExperimentConfig& config);

/// Shortest round-trip text for a double.
[[nodiscard]] std::string format_double(double x);
[[nodiscard]] double parse_double(const std::string& text);

}  // namespace ophc::cli
