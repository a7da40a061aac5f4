#include "cli/formats.hpp"

#include <charconv>
#include <cinttypes>
#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>
#include <string_view>

#include "ophc/version.hpp"

namespace ophc::cli {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

std::vector<std::string_view> split(std::string_view line, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    const std::size_t pos = line.find(sep, start);
    out.push_back(trim(line.substr(start, pos - start)));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

bool try_parse_double(std::string_view text, double& value) {
  text = trim(text);
  if (!text.empty() && text.front() == '+') text.remove_prefix(1);
  if (text.empty()) return false;
  auto res = std::from_chars(text.data(), text.data() + text.size(), value);
  return res.ec == std::errc() && res.ptr == text.data() + text.size();
}

template <typename Int>
bool try_parse_int(std::string_view text, Int& value) {
  text = trim(text);
  if (text.empty()) return false;
  auto res = std::from_chars(text.data(), text.data() + text.size(), value);
  return res.ec == std::errc() && res.ptr == text.data() + text.size();
}

[[noreturn]] void fail_at(std::size_t line, const std::string& what) {
  throw FormatError("line " + std::to_string(line) + ": " + what);
}

const std::string& require(const Record& record, const std::string& key) {
  auto it = record.find(key);
  if (it == record.end()) throw FormatError("record: missing key '" + key + "'");
  return it->second;
}

template <typename Int>
Int require_int(const Record& record, const std::string& key) {
  Int value{};
  if (!try_parse_int(require(record, key), value)) throw FormatError("record: bad integer for '" + key + "'");
  return value;
}

double require_double(const Record& record, const std::string& key) {
  double value = 0.0;
  if (!try_parse_double(require(record, key), value)) throw FormatError("record: bad number for '" + key + "'");
  return value;
}

}  // namespace

std::string format_double(double x) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

double parse_double(const std::string& text) {
  double value = 0.0;
  if (!try_parse_double(text, value)) throw FormatError("not a number: '" + text + "'");
  return value;
}

void write_series(std::ostream& out, const ComplexSeries& y) {
  out << "index,re,im\n";
  for (std::size_t j = 0; j < y.size(); ++j) {
    out << (j + 1) << ',' << format_double(y[j].real()) << ',' << format_double(y[j].imag()) << '\n';
  }
}

ComplexSeries read_series(std::istream& in) {
  std::string line;
  std::size_t line_no = 0;
  if (!std::getline(in, line)) throw FormatError("series: empty input");
  ++line_no;
  {
    const auto header = split(line, ',');
    if (header.size() != 3 || header[0] != "index" || header[1] != "re" || header[2] != "im") {
      fail_at(line_no, "expected header 'index,re,im'");
    }
  }
  std::vector<cplx> samples;
  while (std::getline(in, line)) {
    ++line_no;
    if (trim(line).empty()) continue;
    const auto fields = split(line, ',');
    if (fields.size() != 3) fail_at(line_no, "expected 3 fields, got " + std::to_string(fields.size()));
    std::size_t index = 0;
    if (!try_parse_int(fields[0], index)) fail_at(line_no, "bad index");
    if (index != samples.size() + 1) {
      fail_at(line_no, "index " + std::to_string(index) + " breaks contiguity (expected " +
                           std::to_string(samples.size() + 1) + ")");
    }
    double re = 0.0;
    double im = 0.0;
    if (!try_parse_double(fields[1], re)) fail_at(line_no, "bad real part");
    if (!try_parse_double(fields[2], im)) fail_at(line_no, "bad imaginary part");
    samples.emplace_back(re, im);
  }
  if (samples.empty()) throw FormatError("series: no samples");
  return ComplexSeries(std::move(samples));
}

std::vector<double> read_real_column(std::istream& in) {
  std::vector<double> values;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto text = trim(line);
    if (text.empty()) continue;
    double value = 0.0;
    if (!try_parse_double(text, value)) {
      if (values.empty() && line_no == 1) continue;  // header
      fail_at(line_no, "not a number");
    }
    values.push_back(value);
  }
  return values;
}

void write_record(std::ostream& out, const std::vector<std::pair<std::string, std::string>>& fields) {
  for (const auto& [key, value] : fields) out << key << '=' << value << '\n';
}

Record read_record(std::istream& in) {
  Record record;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto text = trim(line);
    if (text.empty() || text.front() == '#') continue;
    const auto eq = text.find('=');
    if (eq == std::string_view::npos) fail_at(line_no, "expected key=value");
    record[std::string(trim(text.substr(0, eq)))] = std::string(trim(text.substr(eq + 1)));
  }
  return record;
}

void write_threshold_record(std::ostream& out, const ThresholdRecord& r) {
  write_record(out, {{"N", std::to_string(r.n)},
                     {"q", std::to_string(r.q)},
                     {"form", std::string(to_string(r.form))},
                     {"level", format_double(r.level)},
                     {"threshold", format_double(r.threshold)},
                     {"trials", std::to_string(r.trials)},
                     {"seed", std::to_string(r.seed)},
                     {"version", kVersion}});
}

ThresholdRecord read_threshold_record(std::istream& in) {
  const Record record = read_record(in);
  ThresholdRecord r;
  r.n = require_int<std::size_t>(record, "N");
  r.q = require_int<std::size_t>(record, "q");
  const auto form = parse_statistic_form(require(record, "form"));
  if (!form) throw FormatError("record: unknown form '" + require(record, "form") + "'");
  r.form = *form;
  r.level = require_double(record, "level");
  r.threshold = require_double(record, "threshold");
  r.trials = require_int<std::size_t>(record, "trials");
  r.seed = require_int<std::uint64_t>(record, "seed");
  return r;
}

void write_null_samples(std::ostream& out, const std::vector<double>& samples) {
  out << "trial,hc_star\n";
  for (std::size_t t = 0; t < samples.size(); ++t) out << t << ',' << format_double(samples[t]) << '\n';
}

std::vector<double> read_null_samples(std::istream& in) {
  std::string line;
  std::size_t line_no = 0;
  if (!std::getline(in, line)) throw FormatError("null samples: empty input");
  ++line_no;
  if (trim(line) != "trial,hc_star") fail_at(line_no, "expected header 'trial,hc_star'");
  std::vector<double> samples;
  while (std::getline(in, line)) {
    ++line_no;
    if (trim(line).empty()) continue;
    const auto fields = split(line, ',');
    double value = 0.0;
    if (fields.size() != 2 || !try_parse_double(fields[1], value)) fail_at(line_no, "malformed sample row");
    samples.push_back(value);
  }
  if (samples.empty()) throw FormatError("null samples: no rows");
  return samples;
}

void write_histogram(std::ostream& out, const Histogram& h, const std::vector<std::string>& names) {
  out << "bin,lower,upper";
  for (const auto& name : names) out << ',' << name;
  out << '\n';
  const std::size_t bins = h.edges.empty() ? 0 : h.edges.size() - 1;
  for (std::size_t k = 0; k < bins; ++k) {
    out << k << ',' << format_double(h.edges[k]) << ',' << format_double(h.edges[k + 1]);
    for (const auto& counts : h.counts) out << ',' << counts[k];
    out << '\n';
  }
}

void write_power_table(std::ostream& out, const std::vector<PowerRow>& rows) {
  out << "q,q_mode,sigma_mode,trials,rejections,power,threshold\n";
  for (const auto& row : rows) {
    out << row.q << ',' << to_string(row.q_mode) << ',' << row.sigma_mode.describe()
        << ',' << row.trials << ',' << row.rejections << ',' << format_double(row.power) << ','
        << format_double(row.threshold) << '\n';
  }
}

void write_boundary(std::ostream& out, const std::vector<BoundaryRow>& rows) {
  out << "alpha,rho_star,rho_star_gamma\n";
  for (const auto& row : rows) {
    out << format_double(row.alpha) << ',' << format_double(row.rho_star) << ',' << format_double(row.rho_star_gamma)
        << '\n';
  }
}

void write_periodogram(std::ostream& out, const Periodogram& periodogram) {
  out << "m,re_v,im_v,I\n";
  const auto v = periodogram.spectrum();
  const auto intensities = periodogram.intensities();
  for (std::size_t m = 0; m < v.size(); ++m) {
    out << (m + 1) << ',' << format_double(v[m].real()) << ',' << format_double(v[m].imag()) << ','
        << format_double(intensities[m]) << '\n';
  }
}

void write_hc_result(std::ostream& out, const HCResult& r) {
  write_record(out, {{"hc_star", format_double(r.hc_star)},
                     {"argmax", format_double(r.argmax_threshold)},
                     {"argmax_index", std::to_string(r.argmax_index)},
                     {"q", std::to_string(r.q)},
                     {"form", std::string(to_string(r.form))},
                     {"threshold_used", format_double(r.threshold_used)},
                     {"reject", r.reject ? "true" : "false"},
                     {"empirical_pvalue", r.empirical_pvalue ? format_double(*r.empirical_pvalue) : "NA"}});
}

void write_spectrum(std::ostream& out, const SparseSpectrum& spectrum) {
  out << "p=" << spectrum.grid_size() << '\n' << "tau,re,im\n";
  const auto support = spectrum.support();
  const auto amplitudes = spectrum.amplitudes();
  for (std::size_t l = 0; l < support.size(); ++l) {
    out << support[l] << ',' << format_double(amplitudes[l].real()) << ',' << format_double(amplitudes[l].imag())
        << '\n';
  }
}

SparseSpectrum read_spectrum(std::istream& in) {
  std::string line;
  std::size_t line_no = 0;
  if (!std::getline(in, line)) throw FormatError("spectrum: empty input");
  ++line_no;
  const auto first = trim(line);
  std::int64_t p = 0;
  if (first.substr(0, 2) != "p=" || !try_parse_int(first.substr(2), p)) fail_at(line_no, "expected 'p=<grid size>'");
  if (!std::getline(in, line) || trim(line) != "tau,re,im") fail_at(line_no + 1, "expected header 'tau,re,im'");
  ++line_no;
  std::vector<std::int64_t> support;
  std::vector<cplx> amplitudes;
  while (std::getline(in, line)) {
    ++line_no;
    if (trim(line).empty()) continue;
    const auto fields = split(line, ',');
    std::int64_t tau = 0;
    double re = 0.0;
    double im = 0.0;
    if (fields.size() != 3 || !try_parse_int(fields[0], tau) || !try_parse_double(fields[1], re) ||
        !try_parse_double(fields[2], im)) {
      fail_at(line_no, "malformed atom row");
    }
    support.push_back(tau);
    amplitudes.emplace_back(re, im);
  }
  try {
    return SparseSpectrum(p, std::move(support), std::move(amplitudes));
  } catch (const std::invalid_argument& e) {
    throw FormatError(std::string("spectrum: ") + e.what());
  }
}

void write_experiment_config(std::ostream& out, const ExperimentConfig& c) {
  write_record(out, {{"p", std::to_string(c.p)},
                     {"N", std::to_string(c.n)},
                     {"s", std::to_string(c.s)},
                     {"r", format_double(c.r)},
                     {"q_mode", std::string(to_string(c.q_mode))},
                     {"sigma_mode", c.sigma_mode.describe()},
                     {"statistic_form", std::string(to_string(c.statistic_form))},
                     {"trials", std::to_string(c.trials)},
                     {"level", format_double(c.level)},
                     {"master_seed", std::to_string(c.master_seed)},
                     {"separation", c.separation == SeparationRule::theory ? "theory" : "none"},
                     {"version", kVersion}});
}

}  // namespace ophc::cli
