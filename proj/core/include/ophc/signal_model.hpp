#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "ophc/complex_math.hpp"
#include "ophc/rng.hpp"

namespace ophc {

/// Sparse coefficient vector on the p-point extended DFT grid, stored as its
/// support (1-based, strictly increasing) and the matching amplitudes.
/// An empty support is the null.
class SparseSpectrum {
 public:
  SparseSpectrum(std::int64_t p, std::vector<std::int64_t> support, std::vector<cplx> amplitudes);

  [[nodiscard]] static SparseSpectrum null(std::int64_t p);

  [[nodiscard]] std::int64_t grid_size() const noexcept { return p_; }
  [[nodiscard]] std::size_t sparsity() const noexcept { return support_.size(); }
  [[nodiscard]] std::span<const std::int64_t> support() const& noexcept { return support_; }
  std::span<const std::int64_t> support() const&& = delete;
  [[nodiscard]] std::span<const cplx> amplitudes() const& noexcept { return amplitudes_; }
  std::span<const cplx> amplitudes() const&& = delete;

  friend bool operator==(const SparseSpectrum&, const SparseSpectrum&) = default;

 private:
  std::int64_t p_;
  std::vector<std::int64_t> support_;
  std::vector<cplx> amplitudes_;
};

enum class PhaseMode {
  uniform,  // independent uniform phases on [0, 2pi)
  fixed,    // every amplitude real and positive
};

enum class SeparationRule {
  none,    // distinct uniform support, no spacing constraint
  theory,  // min separation ln^2(N)/N
};

/// Parameters of the alternative: grid size p, series length N, sparsity s
/// and signal strength r. gamma and alpha are the exponents with N = p^(1-gamma)
/// and s = p^(1-alpha); they are informational once N and s are fixed.
struct AlternativeParams {
  std::int64_t p = 1'000'000;
  std::size_t n = 1000;
  std::size_t s = 20;
  double r = 0.3;
  double gamma = 0.0;
  double alpha = 0.0;
  PhaseMode phases = PhaseMode::uniform;
  SeparationRule separation = SeparationRule::theory;

  /// N = round(p^(1-gamma)), s = round(p^(1-alpha)).
  [[nodiscard]] static AlternativeParams from_exponents(std::int64_t p, double gamma, double alpha, double r);

  /// Throws std::invalid_argument when the fields are inconsistent.
  void validate() const;
};

/// Minimum wrap-around gap between support points divided by p. Requires s >= 1.
[[nodiscard]] double min_separation(const SparseSpectrum& spectrum);
[[nodiscard]] double min_separation(std::span<const std::int64_t> support, std::int64_t p);

inline constexpr int kDefaultSupportAttempts = 10'000;

/// Uniform random support of size s on {1..p}: sorted i.i.d. draws, accepted
/// when all distinct with min separation >= min_sep. Each attempt uses its own
/// sub-stream of `rng`.
[[nodiscard]] std::vector<std::int64_t> sample_support(std::int64_t p, std::size_t s, double min_sep,
                                                       const RngHandle& rng,
                                                       int max_attempts = kDefaultSupportAttempts);

/// Same law as sample_support conditioned on acceptance, drawn directly:
/// a uniform rotation plus a uniform composition of the slack into s gaps.
/// Never fails when s * ceil(min_sep * p) <= p.
[[nodiscard]] std::vector<std::int64_t> sample_support_conditional(std::int64_t p, std::size_t s,
                                                                   double min_sep, const RngHandle& rng);

/// ln^2(N) / N, the spacing the theory asks of the support.
[[nodiscard]] double theory_min_separation(std::size_t n);

/// A = sqrt(r p ln(p) / N).
[[nodiscard]] double amplitude_from_r(double r, double p, std::size_t n);

/// Random member of the parameter space: separated support (min_sep = ln^2(N)/N)
/// and equal-modulus amplitudes A.
[[nodiscard]] SparseSpectrum make_alternative(const AlternativeParams& params, const RngHandle& rng);

/// Noiseless mean X*beta of length N by direct summation over the atoms.
[[nodiscard]] std::vector<cplx> synthesize_mean(const SparseSpectrum& spectrum, std::size_t n);

/// y = X*beta + z with complex noise of scale sigma (sigma == 0 gives the mean).
[[nodiscard]] ComplexSeries synthesize(const SparseSpectrum& spectrum, std::size_t n, double sigma,
                                       const RngHandle& rng);

/// theta = E[U y] of length q, via the closed-form geometric sum per atom.
[[nodiscard]] std::vector<cplx> mean_spectrum(const SparseSpectrum& spectrum, std::size_t n, std::size_t q);

/// Sum_{j=0}^{n-1} exp(2 pi i j delta) with delta = numerator / denominator.
/// Exact rational reduction keeps large grids free of phase round-off.
[[nodiscard]] cplx dirichlet_sum(std::int64_t numerator, std::int64_t denominator, std::size_t n);

/// Real series of length 2n to complex series of length n: y_t = u_t + i u_{t+n}.
[[nodiscard]] ComplexSeries complexify(std::span<const double> u);

}  // namespace ophc
