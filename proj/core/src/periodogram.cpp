#include "ophc/periodogram.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "fft_backend.hpp"

namespace ophc {

Periodogram::Periodogram(std::size_t n, std::vector<cplx> spectrum) : n_(n), spectrum_(std::move(spectrum)) {
  if (n_ < 1) throw std::invalid_argument("Periodogram: N must be >= 1");
  if (spectrum_.empty()) throw std::invalid_argument("Periodogram: q must be >= 1");
  intensities_.resize(spectrum_.size());
  for (std::size_t m = 0; m < spectrum_.size(); ++m) intensities_[m] = std::norm(spectrum_[m]);
}

std::string_view to_string(QMode mode) {
  switch (mode) {
    case QMode::theory: return "theory";
    case QMode::simulation: return "simulation";
    case QMode::standard: return "standard";
    case QMode::full: return "full";
  }
  return "unknown";
}

std::optional<QMode> parse_q_mode(std::string_view text) {
  for (QMode mode : {QMode::theory, QMode::simulation, QMode::standard, QMode::full}) {
    if (to_string(mode) == text) return mode;
  }
  return std::nullopt;
}

std::size_t q_rule(std::size_t n, QMode mode, std::optional<std::int64_t> p) {
  if (n < 2) throw std::invalid_argument("q_rule: N must be >= 2");
  const auto oversampling = static_cast<std::size_t>(std::floor(std::log(static_cast<double>(n)) + 1.0));
  switch (mode) {
    case QMode::theory: return n * oversampling;
    case QMode::simulation: return 2 * n * oversampling;
    case QMode::standard: return n;
    case QMode::full:
      if (!p) throw std::invalid_argument("q_rule: mode 'full' requires the grid size p");
      if (*p < 1) throw std::invalid_argument("q_rule: p must be >= 1");
      return static_cast<std::size_t>(*p);
  }
  throw std::invalid_argument("q_rule: unknown mode");
}

Periodogram transform_direct(const ComplexSeries& y, std::size_t q) {
  if (q < 1) throw std::invalid_argument("transform: q must be >= 1");
  const std::size_t n = y.size();
  // Table of q-th roots of unity; phase index (m j) mod q is exact.
  std::vector<cplx> roots(q);
  for (std::size_t k = 0; k < q; ++k) {
    const double phase = kTwoPi * (static_cast<double>(k) / static_cast<double>(q));
    roots[k] = cplx(std::cos(phase), std::sin(phase));
  }
  const double scale = 1.0 / std::sqrt(static_cast<double>(n));
  std::vector<cplx> v(q);
  for (std::size_t m = 0; m < q; ++m) {
    cplx acc(0.0, 0.0);
    std::size_t idx = 0;
    for (std::size_t j = 0; j < n; ++j) {
      acc += roots[idx] * y[j];
      idx += m;
      if (idx >= q) idx %= q;
    }
    v[m] = acc * scale;
  }
  return Periodogram(n, std::move(v));
}

Periodogram transform_fft(const ComplexSeries& y, std::size_t q) {
  if (q < 1) throw std::invalid_argument("transform: q must be >= 1");
  const std::size_t n = y.size();
  std::vector<cplx> buffer(q, cplx(0.0, 0.0));
  for (std::size_t j = 0; j < n; ++j) buffer[j % q] += y[j];
  detail::backward_dft(buffer);
  const double scale = 1.0 / std::sqrt(static_cast<double>(n));
  for (auto& z : buffer) z *= scale;
  return Periodogram(n, std::move(buffer));
}

Periodogram oversampled_transform(const ComplexSeries& y, std::size_t q) {
  if (q >= kFastPathMinLength || y.size() * q > (std::size_t{1} << 16)) return transform_fft(y, q);
  return transform_direct(y, q);
}

cplx null_cross_correlation(std::int64_t m1, std::int64_t m2, std::size_t n, std::size_t q) {
  if (n < 1 || q < 1) throw std::invalid_argument("null_cross_correlation: N and q must be >= 1");
  const auto qq = static_cast<std::int64_t>(q);
  std::int64_t diff = (m1 - m2) % qq;
  if (diff < 0) diff += qq;
  if (diff == 0) return {1.0, 0.0};
  const double phase = kTwoPi * (static_cast<double>(diff) / static_cast<double>(q));
  const cplx w(std::cos(phase), std::sin(phase));
  const auto nn_mod = (static_cast<std::int64_t>(n % q) * diff) % qq;
  if (nn_mod == 0) return {0.0, 0.0};
  const double phase_n = kTwoPi * (static_cast<double>(nn_mod) / static_cast<double>(q));
  const cplx wn(std::cos(phase_n), std::sin(phase_n));
  return (1.0 - wn) / (static_cast<double>(n) * (1.0 - w));
}

}  // namespace ophc
