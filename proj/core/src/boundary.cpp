#include "ophc/boundary.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace ophc {

namespace {

void check_gamma(double gamma) {
  if (!(gamma >= 0.0 && gamma < 1.0)) {
    throw std::invalid_argument("gamma must lie in [0, 1), got " + std::to_string(gamma));
  }
}

}  // namespace

double rho_star(double alpha) {
  if (!(alpha > 0.5 && alpha < 1.0)) {
    throw std::invalid_argument("rho_star: alpha must lie in (1/2, 1), got " + std::to_string(alpha));
  }
  if (alpha >= 0.75) {
    const double d = 1.0 - std::sqrt(1.0 - alpha);
    return d * d;
  }
  return alpha - 0.5;
}

double rho_star_gamma(double alpha, double gamma) {
  check_gamma(gamma);
  const double lower = (1.0 + gamma) / 2.0;
  if (!(alpha >= lower && alpha < 1.0)) {
    throw std::invalid_argument("rho_star_gamma: alpha must lie in [(1+gamma)/2, 1), got " + std::to_string(alpha));
  }
  if (alpha >= (3.0 + gamma) / 4.0) {
    const double d = std::sqrt(1.0 - gamma) - std::sqrt(1.0 - alpha);
    return d * d;
  }
  return alpha - (1.0 + gamma) / 2.0;
}

void BoundaryPoint::validate() const {
  check_gamma(gamma);
  if (!(alpha > (1.0 + gamma) / 2.0 && alpha < 1.0)) {
    throw std::invalid_argument("BoundaryPoint: alpha must lie in ((1+gamma)/2, 1)");
  }
  if (!(r > 0.0) || !std::isfinite(r)) throw std::invalid_argument("BoundaryPoint: r must be positive");
}

std::string_view to_string(Detectability d) {
  switch (d) {
    case Detectability::detectable: return "detectable";
    case Detectability::undetectable: return "undetectable";
    case Detectability::on_boundary: return "on_boundary";
  }
  return "unknown";
}

Detectability classify(const BoundaryPoint& point) {
  point.validate();
  const double boundary = rho_star_gamma(point.alpha, point.gamma);
  if (std::abs(point.r - boundary) <= kBoundaryTolerance) return Detectability::on_boundary;
  return point.r > boundary ? Detectability::detectable : Detectability::undetectable;
}

std::vector<BoundaryRow> boundary_curve(double gamma, std::span<const double> alphas) {
  std::vector<BoundaryRow> rows;
  rows.reserve(alphas.size());
  for (double alpha : alphas) rows.push_back({alpha, rho_star(alpha), rho_star_gamma(alpha, gamma)});
  return rows;
}

}  // namespace ophc
