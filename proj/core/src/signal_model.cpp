#include "ophc/signal_model.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace ophc {

namespace {

__extension__ using i128 = __int128;

std::int64_t positive_mod(i128 x, std::int64_t m) {
  i128 r = x % m;
  if (r < 0) r += m;
  return static_cast<std::int64_t>(r);
}

// exp(2 pi i k / m) for integer k; k is reduced to (-m/2, m/2] first.
cplx unit_root(i128 k, std::int64_t m) {
  std::int64_t r = positive_mod(k, m);
  if (2 * static_cast<i128>(r) > m) r -= m;
  const double phase = kTwoPi * (static_cast<double>(r) / static_cast<double>(m));
  return {std::cos(phase), std::sin(phase)};
}

bool separated(std::span<const std::int64_t> sorted_support, std::int64_t p, double min_sep) {
  for (std::size_t i = 1; i < sorted_support.size(); ++i) {
    if (sorted_support[i] == sorted_support[i - 1]) return false;
  }
  return min_separation(sorted_support, p) >= min_sep;
}

void check_support_request(std::int64_t p, std::size_t s, double min_sep) {
  if (p < 1) throw std::invalid_argument("sample_support: p must be >= 1");
  if (s == 0) throw std::invalid_argument("sample_support: s must be >= 1");
  if (static_cast<std::uint64_t>(s) > static_cast<std::uint64_t>(p)) {
    throw std::invalid_argument("sample_support: s exceeds grid size p");
  }
  if (!(min_sep >= 0.0)) throw std::invalid_argument("sample_support: min_sep must be non-negative");
  if (!(static_cast<double>(s) * min_sep < 1.0)) {
    throw std::invalid_argument("sample_support: infeasible separation, s * min_sep = " +
                                std::to_string(static_cast<double>(s) * min_sep) + " >= 1");
  }
}

}  // namespace

SparseSpectrum::SparseSpectrum(std::int64_t p, std::vector<std::int64_t> support, std::vector<cplx> amplitudes)
    : p_(p), support_(std::move(support)), amplitudes_(std::move(amplitudes)) {
  if (p_ < 1) throw std::invalid_argument("SparseSpectrum: p must be >= 1");
  if (support_.size() != amplitudes_.size()) {
    throw std::invalid_argument("SparseSpectrum: support and amplitudes differ in length");
  }
  for (std::size_t i = 0; i < support_.size(); ++i) {
    if (support_[i] < 1 || support_[i] > p_) {
      throw std::invalid_argument("SparseSpectrum: support index " + std::to_string(support_[i]) +
                                  " outside [1, p]");
    }
    if (i > 0 && support_[i] <= support_[i - 1]) {
      throw std::invalid_argument("SparseSpectrum: support must be strictly increasing");
    }
  }
}

SparseSpectrum SparseSpectrum::null(std::int64_t p) { return SparseSpectrum(p, {}, {}); }

AlternativeParams AlternativeParams::from_exponents(std::int64_t p, double gamma, double alpha, double r) {
  if (!(gamma >= 0.0 && gamma < 1.0)) throw std::invalid_argument("AlternativeParams: gamma must be in [0, 1)");
  AlternativeParams params;
  params.p = p;
  params.gamma = gamma;
  params.alpha = alpha;
  params.r = r;
  const double pd = static_cast<double>(p);
  params.n = static_cast<std::size_t>(std::llround(std::pow(pd, 1.0 - gamma)));
  params.s = static_cast<std::size_t>(std::llround(std::pow(pd, 1.0 - alpha)));
  params.validate();
  return params;
}

void AlternativeParams::validate() const {
  if (p < 2) throw std::invalid_argument("AlternativeParams: p must be >= 2");
  if (n < 1) throw std::invalid_argument("AlternativeParams: N must be >= 1");
  if (static_cast<std::uint64_t>(s) > static_cast<std::uint64_t>(p)) {
    throw std::invalid_argument("AlternativeParams: s exceeds p");
  }
  if (s > 0 && !(r > 0.0 && std::isfinite(r))) throw std::invalid_argument("AlternativeParams: r must be positive");
}

double min_separation(std::span<const std::int64_t> support, std::int64_t p) {
  if (support.empty()) throw std::invalid_argument("min_separation: empty support");
  std::int64_t gap = support.front() + p - support.back();
  for (std::size_t i = 1; i < support.size(); ++i) gap = std::min(gap, support[i] - support[i - 1]);
  return static_cast<double>(gap) / static_cast<double>(p);
}

double min_separation(const SparseSpectrum& spectrum) {
  return min_separation(spectrum.support(), spectrum.grid_size());
}

std::vector<std::int64_t> sample_support(std::int64_t p, std::size_t s, double min_sep, const RngHandle& rng,
                                         int max_attempts) {
  check_support_request(p, s, min_sep);
  std::uniform_int_distribution<std::int64_t> index(1, p);
  std::vector<std::int64_t> support(s);
  for (int attempt = 0; attempt < max_attempts; ++attempt) {
    auto engine = rng.child(static_cast<std::uint64_t>(attempt)).engine();
    for (auto& tau : support) tau = index(engine);
    std::sort(support.begin(), support.end());
    if (separated(support, p, min_sep)) return support;
  }
  throw std::runtime_error("sample_support: no separated support after " + std::to_string(max_attempts) +
                           " attempts (p=" + std::to_string(p) + ", s=" + std::to_string(s) +
                           ", min_sep=" + std::to_string(min_sep) + ")");
}

std::vector<std::int64_t> sample_support_conditional(std::int64_t p, std::size_t s, double min_sep,
                                                     const RngHandle& rng) {
  check_support_request(p, s, min_sep);
  // Smallest integer gap g with g / p >= min_sep (and >= 1 for distinctness).
  auto g = static_cast<std::int64_t>(std::ceil(min_sep * static_cast<double>(p)));
  while (g > 1 && static_cast<double>(g - 1) / static_cast<double>(p) >= min_sep) --g;
  g = std::max<std::int64_t>(g, 1);
  const auto sz = static_cast<std::int64_t>(s);
  const std::int64_t slack = p - sz * g;
  if (slack < 0) throw std::invalid_argument("sample_support_conditional: separation infeasible on this grid");

  auto engine = rng.engine();
  // Uniform composition of `slack` into s non-negative parts: s - 1 distinct
  // bar positions among slack + s - 1 slots (Floyd's sampling).
  const std::int64_t slots = slack + sz - 1;
  std::vector<std::int64_t> bars;
  bars.reserve(s - 1);
  for (std::int64_t j = slots - (sz - 1); j < slots; ++j) {
    const std::int64_t t = std::uniform_int_distribution<std::int64_t>(0, j)(engine);
    if (std::find(bars.begin(), bars.end(), t) == bars.end()) {
      bars.push_back(t);
    } else {
      bars.push_back(j);
    }
  }
  std::sort(bars.begin(), bars.end());
  const std::int64_t start = std::uniform_int_distribution<std::int64_t>(0, p - 1)(engine);

  std::vector<std::int64_t> support;
  support.reserve(s);
  std::int64_t pos = start;
  std::int64_t prev_bar = -1;
  support.push_back(pos % p + 1);
  for (std::size_t i = 0; i + 1 < s; ++i) {
    const std::int64_t extra = bars[i] - prev_bar - 1;
    prev_bar = bars[i];
    pos += g + extra;
    support.push_back(pos % p + 1);
  }
  std::sort(support.begin(), support.end());
  return support;
}

double theory_min_separation(std::size_t n) {
  const double l = std::log(static_cast<double>(n));
  return l * l / static_cast<double>(n);
}

double amplitude_from_r(double r, double p, std::size_t n) {
  if (!(r > 0.0) || !std::isfinite(r)) throw std::invalid_argument("amplitude_from_r: r must be positive");
  if (!(p > 1.0)) throw std::invalid_argument("amplitude_from_r: p must exceed 1");
  if (n < 1) throw std::invalid_argument("amplitude_from_r: N must be >= 1");
  return std::sqrt(r * p * std::log(p) / static_cast<double>(n));
}

SparseSpectrum make_alternative(const AlternativeParams& params, const RngHandle& rng) {
  params.validate();
  if (params.s == 0) return SparseSpectrum::null(params.p);

  const RngHandle support_stream = rng.child(0);
  std::vector<std::int64_t> support;
  if (params.separation == SeparationRule::theory) {
    support = sample_support_conditional(params.p, params.s, theory_min_separation(params.n), support_stream);
  } else {
    support = sample_support(params.p, params.s, 0.0, support_stream);
  }

  const double amplitude = amplitude_from_r(params.r, static_cast<double>(params.p), params.n);
  std::vector<cplx> amplitudes(params.s, cplx(amplitude, 0.0));
  if (params.phases == PhaseMode::uniform) {
    auto engine = rng.child(1).engine();
    std::uniform_real_distribution<double> phase(0.0, kTwoPi);
    for (auto& beta : amplitudes) beta = std::polar(amplitude, phase(engine));
  }
  return SparseSpectrum(params.p, std::move(support), std::move(amplitudes));
}

std::vector<cplx> synthesize_mean(const SparseSpectrum& spectrum, std::size_t n) {
  if (n < 1) throw std::invalid_argument("synthesize: N must be >= 1");
  const std::int64_t p = spectrum.grid_size();
  const double scale = 1.0 / std::sqrt(static_cast<double>(p));
  std::vector<cplx> y(n, cplx(0.0, 0.0));
  const auto support = spectrum.support();
  const auto amplitudes = spectrum.amplitudes();
  for (std::size_t l = 0; l < support.size(); ++l) {
    const cplx beta = amplitudes[l] * scale;
    const std::int64_t k = support[l] - 1;
    for (std::size_t j = 0; j < n; ++j) {
      y[j] += beta * unit_root(-static_cast<i128>(j) * k, p);
    }
  }
  return y;
}

ComplexSeries synthesize(const SparseSpectrum& spectrum, std::size_t n, double sigma, const RngHandle& rng) {
  if (!(sigma >= 0.0) || !std::isfinite(sigma)) throw std::invalid_argument("synthesize: sigma must be >= 0");
  std::vector<cplx> y = synthesize_mean(spectrum, n);
  if (sigma > 0.0) {
    auto engine = rng.engine();
    add_complex_normal(y, sigma, engine);
  }
  return ComplexSeries(std::move(y));
}

cplx dirichlet_sum(std::int64_t numerator, std::int64_t denominator, std::size_t n) {
  if (denominator < 1) throw std::invalid_argument("dirichlet_sum: denominator must be positive");
  const std::int64_t reduced = positive_mod(numerator, denominator);
  if (reduced == 0) return {static_cast<double>(n), 0.0};
  const cplx step = unit_root(reduced, denominator);
  const cplx denom = 1.0 - step;
  if (std::abs(denom) < 1e-12) {
    cplx sum(0.0, 0.0);
    for (std::size_t j = 0; j < n; ++j) sum += unit_root(static_cast<i128>(j) * reduced, denominator);
    return sum;
  }
  const cplx numer = 1.0 - unit_root(static_cast<i128>(n) * reduced, denominator);
  return numer / denom;
}

std::vector<cplx> mean_spectrum(const SparseSpectrum& spectrum, std::size_t n, std::size_t q) {
  if (q < 1) throw std::invalid_argument("mean_spectrum: q must be >= 1");
  if (n < 1) throw std::invalid_argument("mean_spectrum: N must be >= 1");
  const std::int64_t p = spectrum.grid_size();
  const auto qq = static_cast<std::int64_t>(q);
  if (static_cast<i128>(p) * qq > std::numeric_limits<std::int64_t>::max()) {
    throw std::overflow_error("mean_spectrum: p * q overflows the exact phase representation");
  }
  const std::int64_t denominator = p * qq;
  const double scale = 1.0 / std::sqrt(static_cast<double>(n) * static_cast<double>(p));

  std::vector<cplx> theta(q, cplx(0.0, 0.0));
  const auto support = spectrum.support();
  const auto amplitudes = spectrum.amplitudes();
  for (std::size_t l = 0; l < support.size(); ++l) {
    const cplx beta = amplitudes[l] * scale;
    const std::int64_t atom_offset = (support[l] - 1) * qq;
    for (std::int64_t m = 0; m < qq; ++m) {
      // delta = m/q - (tau-1)/p = (m p - (tau-1) q) / (p q)
      theta[static_cast<std::size_t>(m)] += beta * dirichlet_sum(m * p - atom_offset, denominator, n);
    }
  }
  return theta;
}

ComplexSeries complexify(std::span<const double> u) {
  if (u.empty() || u.size() % 2 != 0) {
    throw std::invalid_argument("complexify: input length must be even and positive, got " +
                                std::to_string(u.size()));
  }
  const std::size_t n = u.size() / 2;
  std::vector<cplx> y(n);
  for (std::size_t t = 0; t < n; ++t) y[t] = cplx(u[t], u[t + n]);
  return ComplexSeries(std::move(y));
}

}  // namespace ophc
