#include "ophc/complex_math.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace ophc {

ComplexSeries::ComplexSeries(std::vector<cplx> samples) : samples_(std::move(samples)) {
  if (samples_.empty()) {
    throw std::invalid_argument("ComplexSeries: series must contain at least one sample");
  }
}

ComplexSeries ComplexSeries::scaled(double factor) const {
  std::vector<cplx> out(samples_);
  for (auto& z : out) z *= factor;
  return ComplexSeries(std::move(out));
}

void add_complex_normal(std::span<cplx> out, double sigma, std::mt19937_64& engine) {
  std::normal_distribution<double> normal(0.0, sigma / std::sqrt(2.0));
  for (auto& z : out) {
    const double re = normal(engine);
    const double im = normal(engine);
    z += cplx(re, im);
  }
}

ComplexSeries sample_complex_normal(std::size_t n, double sigma, const RngHandle& rng) {
  if (n == 0) throw std::invalid_argument("sample_complex_normal: n must be >= 1");
  if (!(sigma > 0.0) || !std::isfinite(sigma)) {
    throw std::invalid_argument("sample_complex_normal: sigma must be positive, got " + std::to_string(sigma));
  }
  std::vector<cplx> z(n);
  auto engine = rng.engine();
  add_complex_normal(z, sigma, engine);
  return ComplexSeries(std::move(z));
}

double tail_prob(double t) {
  if (!(t >= 0.0)) throw std::invalid_argument("tail_prob: t must be non-negative");
  return std::exp(-t * t);
}

double noncentral_tail_upper(double t, double mu_abs) {
  if (!(t >= 0.0) || !(mu_abs >= 0.0)) {
    throw std::invalid_argument("noncentral_tail_upper: arguments must be non-negative");
  }
  const double excess = std::max(t - mu_abs, 0.0);
  return std::exp(-excess * excess);
}

double circle_distance(double a, double b) {
  if (!(a >= 0.0 && a <= 1.0) || !(b >= 0.0 && b <= 1.0)) {
    throw std::invalid_argument("circle_distance: arguments must lie in [0, 1]");
  }
  const double d = std::abs(a - b);
  return std::min(d, 1.0 - d);
}

}  // namespace ophc
