#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

#include "ophc/rng.hpp"

namespace ophc {

using cplx = std::complex<double>;

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr double kTwoPi = 2.0 * kPi;

/// Finite, non-empty sequence of complex samples.
class ComplexSeries {
 public:
  explicit ComplexSeries(std::vector<cplx> samples);

  [[nodiscard]] std::size_t size() const noexcept { return samples_.size(); }
  [[nodiscard]] std::span<const cplx> samples() const& noexcept { return samples_; }
  std::span<const cplx> samples() const&& = delete;
  [[nodiscard]] const cplx& operator[](std::size_t i) const { return samples_[i]; }

  /// Copy with every sample multiplied by `factor`.
  [[nodiscard]] ComplexSeries scaled(double factor) const;

  friend bool operator==(const ComplexSeries&, const ComplexSeries&) = default;

 private:
  std::vector<cplx> samples_;
};

/// n i.i.d. circularly-symmetric complex normals with E|z|^2 = sigma^2
/// (real and imaginary parts independent N(0, sigma^2/2)).
[[nodiscard]] ComplexSeries sample_complex_normal(std::size_t n, double sigma, const RngHandle& rng);

/// Same draw as sample_complex_normal, added in place onto `out`.
void add_complex_normal(std::span<cplx> out, double sigma, std::mt19937_64& engine);

/// P(|z| >= t) for a standard complex normal: exp(-t^2).
[[nodiscard]] double tail_prob(double t);

/// Upper bound exp(-((t - |mu|)_+)^2) on P(|mu + z| > t).
[[nodiscard]] double noncentral_tail_upper(double t, double mu_abs);

/// Wrap-around distance on the unit circle, min(|a-b|, 1-|a-b|), for a, b in [0, 1].
[[nodiscard]] double circle_distance(double a, double b);

}  // namespace ophc
