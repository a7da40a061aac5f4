#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "ophc/complex_math.hpp"

namespace ophc {

/// Spectrum v = U y on q equispaced frequencies, U_{mj} = exp(2 pi i m j / q) / sqrt(N)
/// (0-based m, j), together with the intensities I_m = |v_m|^2.
class Periodogram {
 public:
  /// Wraps an already computed spectrum of a length-`n` series.
  Periodogram(std::size_t n, std::vector<cplx> spectrum);

  [[nodiscard]] std::size_t q() const noexcept { return spectrum_.size(); }
  [[nodiscard]] std::size_t n() const noexcept { return n_; }
  [[nodiscard]] std::span<const cplx> spectrum() const& noexcept { return spectrum_; }
  std::span<const cplx> spectrum() const&& = delete;
  [[nodiscard]] std::span<const double> intensities() const& noexcept { return intensities_; }
  std::span<const double> intensities() const&& = delete;

 private:
  std::size_t n_;
  std::vector<cplx> spectrum_;
  std::vector<double> intensities_;
};

enum class QMode { theory, simulation, standard, full };

[[nodiscard]] std::string_view to_string(QMode mode);
[[nodiscard]] std::optional<QMode> parse_q_mode(std::string_view text);

/// theory: N floor(ln N + 1); simulation: 2 N floor(ln N + 1); standard: N; full: p.
[[nodiscard]] std::size_t q_rule(std::size_t n, QMode mode, std::optional<std::int64_t> p = std::nullopt);

/// Transform lengths at or above this use the FFT path.
inline constexpr std::size_t kFastPathMinLength = 4096;

/// Direct O(N q) summation with exact integer phase reduction.
[[nodiscard]] Periodogram transform_direct(const ComplexSeries& y, std::size_t q);

/// Length-q backward FFT of y folded modulo q (zero padded when q >= N).
[[nodiscard]] Periodogram transform_fft(const ComplexSeries& y, std::size_t q);

/// Dispatches to the FFT when q >= kFastPathMinLength or N q is large.
[[nodiscard]] Periodogram oversampled_transform(const ComplexSeries& y, std::size_t q);

/// Cross-correlation E[v_{m1} conj(v_{m2})] of the null transform at 1-based
/// indices: (1 - w^N) / (N (1 - w)) with w = exp(2 pi i (m1 - m2) / q); equals 1
/// when m1 == m2 mod q.
[[nodiscard]] cplx null_cross_correlation(std::int64_t m1, std::int64_t m2, std::size_t n, std::size_t q);

}  // namespace ophc
