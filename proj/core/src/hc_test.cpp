#include "ophc/hc_test.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <functional>
#include <limits>
#include <vector>

namespace ophc {

namespace {

// HC for `count` exceedances at threshold t with t^2 = square.
double hc_from_square(double count, double q, double square) {
  const double psi = std::exp(-square);
  const double comp = -std::expm1(-square);
  const double variance = q * psi * comp;
  if (!(variance > 0.0) || !std::isfinite(variance)) {
    throw UndefinedStatisticError("HC(t): null variance q*psi*(1-psi) is zero at t^2 = " + std::to_string(square));
  }
  return (count - q * psi) / std::sqrt(variance);
}

struct Candidate {
  double value = -std::numeric_limits<double>::infinity();
  double square = 0.0;
  std::size_t count = 0;
};

void consider(Candidate& best, double q, double square, std::size_t count) {
  const double value = hc_from_square(static_cast<double>(count), q, square);
  if (value > best.value) best = Candidate{value, square, count};
}

}  // namespace

std::string_view to_string(StatisticForm form) {
  return form == StatisticForm::interval ? "interval" : "pvalue";
}

std::optional<StatisticForm> parse_statistic_form(std::string_view text) {
  if (text == "interval") return StatisticForm::interval;
  if (text == "pvalue") return StatisticForm::pvalue;
  return std::nullopt;
}

double hc_value(double count, double q, double psi) {
  if (!(psi > 0.0 && psi < 1.0)) throw UndefinedStatisticError("HC: tail mass must lie in (0, 1)");
  return hc_from_square(count, q, -std::log(psi));
}

double hc_at(double t, const Periodogram& periodogram) {
  if (!(t > 0.0) || !std::isfinite(t)) throw std::invalid_argument("hc_at: t must be positive and finite");
  const double square = t * t;
  const auto intensities = periodogram.intensities();
  // sqrt(I) >= t, compared on the magnitude scale to respect the definition.
  const auto count = static_cast<std::size_t>(
      std::count_if(intensities.begin(), intensities.end(), [t](double x) { return std::sqrt(x) >= t; }));
  return hc_from_square(static_cast<double>(count), static_cast<double>(periodogram.q()), square);
}

IntervalBounds IntervalBounds::theory(std::size_t n) {
  return IntervalBounds{1.0, std::sqrt(std::log(static_cast<double>(n) / 3.0))};
}

HCResult hc_star_interval(const Periodogram& periodogram, double a, double b, IntervalSup mode) {
  if (!(a > 0.0) || !std::isfinite(a)) throw std::invalid_argument("hc_star_interval: a must be positive");
  if (!(b >= a) || !std::isfinite(b)) throw std::invalid_argument("hc_star_interval: requires a <= b");
  const double q = static_cast<double>(periodogram.q());
  const double a2 = a * a;
  const double b2 = b * b;
  // Domain check for the whole interval: the variance is smallest at an end.
  (void)hc_from_square(0.0, q, a2);
  (void)hc_from_square(0.0, q, b2);

  const auto intensities = periodogram.intensities();
  std::vector<double> inside;
  std::size_t above_b = 0;    // sqrt(I) > b
  std::size_t at_least_b = 0;  // sqrt(I) >= b
  std::size_t at_least_a = 0;  // sqrt(I) >= a
  for (double x : intensities) {
    if (x > b2) ++above_b;
    if (x >= b2) ++at_least_b;
    if (x >= a2) ++at_least_a;
    if (x > a2 && x <= b2) inside.push_back(x);
  }
  std::sort(inside.begin(), inside.end(), std::greater<>());

  Candidate best;
  if (mode == IntervalSup::exact) {
    consider(best, q, a2, at_least_a);
    consider(best, q, b2, at_least_b);
  }
  for (std::size_t k = 0; k < inside.size(); ++k) {
    consider(best, q, inside[k], above_b + k + 1);
  }
  if (best.value == -std::numeric_limits<double>::infinity()) {
    throw UndefinedStatisticError("hc_star_interval: no sample point in (a, b]");
  }

  HCResult result;
  result.hc_star = best.value;
  result.argmax_threshold = std::sqrt(best.square);
  result.argmax_index = best.count;
  result.q = periodogram.q();
  result.form = StatisticForm::interval;
  return result;
}

HCResult hc_star_pvalues(const Periodogram& periodogram) {
  const std::size_t qn = periodogram.q();
  if (qn < 2) throw std::invalid_argument("hc_star_pvalues: q must be >= 2");
  const double q = static_cast<double>(qn);
  const double lower = 1.0 / q;

  // Ascending P = exp(-I) is descending I; keep I to avoid a log round trip.
  std::vector<double> admissible;
  std::size_t below_lower = 0;  // P < 1/q, ranked ahead of every admissible value
  for (double x : periodogram.intensities()) {
    const double pv = std::exp(-x);
    if (pv < lower) {
      ++below_lower;
    } else if (pv < 0.5) {
      admissible.push_back(x);
    }
  }
  if (admissible.empty()) {
    throw UndefinedStatisticError("hc_star_pvalues: no ordered p-value in [1/q, 1/2)");
  }
  std::sort(admissible.begin(), admissible.end(), std::greater<>());

  Candidate best;
  for (std::size_t k = 0; k < admissible.size(); ++k) consider(best, q, admissible[k], below_lower + k + 1);

  HCResult result;
  result.hc_star = best.value;
  result.argmax_threshold = std::sqrt(best.square);
  result.argmax_index = best.count;
  result.q = qn;
  result.form = StatisticForm::pvalue;
  return result;
}

double estimate_sigma(const ComplexSeries& y) {
  double sum = 0.0;
  for (const auto& z : y.samples()) sum += std::norm(z);
  if (!(sum > 0.0)) throw std::domain_error("estimate_sigma: all-zero series, sigma estimate would be 0");
  return std::sqrt(sum / static_cast<double>(y.size()));
}

std::string SigmaSpec::describe() const {
  if (!known) return "estimated";
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof(buf), *known);
  return "known:" + std::string(buf, res.ptr);
}

std::optional<SigmaSpec> parse_sigma_spec(std::string_view text) {
  if (text == "estimated") return SigmaSpec::estimated();
  if (text == "known") return SigmaSpec::known_value(1.0);
  constexpr std::string_view prefix = "known:";
  if (text.substr(0, prefix.size()) != prefix) return std::nullopt;
  const std::string_view number = text.substr(prefix.size());
  double value = 0.0;
  auto res = std::from_chars(number.data(), number.data() + number.size(), value);
  if (res.ec != std::errc() || res.ptr != number.data() + number.size()) return std::nullopt;
  if (!(value > 0.0) || !std::isfinite(value)) return std::nullopt;
  return SigmaSpec::known_value(value);
}

double theory_threshold(std::size_t n) {
  const double l = std::log(static_cast<double>(n));
  return l * l;
}

HCResult hc_star(const Periodogram& periodogram, StatisticForm form, const std::optional<IntervalBounds>& bounds) {
  if (form == StatisticForm::pvalue) return hc_star_pvalues(periodogram);
  const IntervalBounds ab = bounds.value_or(IntervalBounds::theory(periodogram.n()));
  return hc_star_interval(periodogram, ab.a, ab.b, IntervalSup::exact);
}

HCResult ophc_test(const ComplexSeries& y, const TestOptions& options) {
  if (options.q < 1) throw std::invalid_argument("ophc_test: q must be >= 1");
  if (!std::isfinite(options.threshold)) throw std::invalid_argument("ophc_test: threshold must be finite");
  const double sigma = options.sigma.known ? *options.sigma.known : estimate_sigma(y);
  if (!(sigma > 0.0) || !std::isfinite(sigma)) throw std::invalid_argument("ophc_test: sigma must be positive");

  std::vector<cplx> normalized(y.samples().begin(), y.samples().end());
  for (auto& z : normalized) z /= sigma;
  const Periodogram periodogram = oversampled_transform(ComplexSeries(std::move(normalized)), options.q);

  HCResult result = hc_star(periodogram, options.form, options.bounds);
  result.threshold_used = options.threshold;
  result.reject = result.hc_star > options.threshold;
  return result;
}

}  // namespace ophc
