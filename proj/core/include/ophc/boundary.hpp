#pragma once

#include <span>
#include <string_view>
#include <vector>

namespace ophc {

/// Sparse-mixture boundary for identity / Gaussian designs, alpha in (1/2, 1).
[[nodiscard]] double rho_star(double alpha);

/// Boundary for the extended DFT design with N = p^(1-gamma),
/// alpha in [(1+gamma)/2, 1).
[[nodiscard]] double rho_star_gamma(double alpha, double gamma);

/// A point (gamma, alpha, r) with alpha strictly inside ((1+gamma)/2, 1).
struct BoundaryPoint {
  double gamma = 0.0;
  double alpha = 0.75;
  double r = 0.0;

  /// Throws std::invalid_argument outside the admissible region.
  void validate() const;
};

enum class Detectability { detectable, undetectable, on_boundary };

[[nodiscard]] std::string_view to_string(Detectability d);

inline constexpr double kBoundaryTolerance = 1e-12;

[[nodiscard]] Detectability classify(const BoundaryPoint& point);

struct BoundaryRow {
  double alpha = 0.0;
  double rho_star = 0.0;
  double rho_star_gamma = 0.0;
};

/// Both curves over a caller-supplied alpha grid; every alpha must satisfy
/// (1+gamma)/2 <= alpha < 1 and alpha > 1/2.
[[nodiscard]] std::vector<BoundaryRow> boundary_curve(double gamma, std::span<const double> alphas);

}  // namespace ophc
