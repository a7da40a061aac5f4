#include <gtest/gtest.h>

#include <cmath>
#include <stdexcept>
#include <vector>

#include "ophc/boundary.hpp"

namespace {

using ophc::Detectability;

TEST(RhoStar, Examples) {
  EXPECT_NEAR(ophc::rho_star(0.75), 0.25, 1e-15);
  EXPECT_NEAR(ophc::rho_star(std::nextafter(0.75, 0.0)), 0.25, 1e-15);
  EXPECT_NEAR(ophc::rho_star(0.6), 0.1, 1e-15);
  EXPECT_NEAR(ophc::rho_star(1.0 - 1e-12), 1.0, 1e-5);
  EXPECT_THROW((void)ophc::rho_star(0.5), std::invalid_argument);
  EXPECT_THROW((void)ophc::rho_star(1.0), std::invalid_argument);
}

TEST(RhoStarGamma, Examples) {
  EXPECT_EQ(ophc::rho_star_gamma(0.65, 0.3), 0.0);
  EXPECT_NEAR(ophc::rho_star_gamma(0.825, 0.3), 0.175, 1e-15);
  EXPECT_NEAR(ophc::rho_star_gamma(std::nextafter(0.825, 0.0), 0.3), 0.175, 1e-15);
  EXPECT_NEAR(ophc::rho_star_gamma(0.9, 0.3), 0.2708497377870818, 1e-15);
  EXPECT_THROW((void)ophc::rho_star_gamma(0.64, 0.3), std::invalid_argument);
  EXPECT_THROW((void)ophc::rho_star_gamma(1.0, 0.3), std::invalid_argument);
  EXPECT_THROW((void)ophc::rho_star_gamma(0.9, 1.0), std::invalid_argument);
  EXPECT_THROW((void)ophc::rho_star_gamma(0.9, -0.1), std::invalid_argument);
}

TEST(RhoStarGamma, EndpointVanishes) {
  for (double gamma : {0.0, 0.1, 0.3, 0.6, 0.9}) {
    const double alpha = (1.0 + gamma) / 2.0;
    if (alpha > 0.5) {
      EXPECT_EQ(ophc::rho_star_gamma(alpha, gamma), 0.0) << gamma;
    }
  }
}

TEST(RhoStarGamma, ReducesToRhoStarAtGammaZero) {
  for (int k = 1; k < 1000; ++k) {
    const double alpha = 0.5 + 0.5 * k / 1000.0;
    EXPECT_NEAR(ophc::rho_star_gamma(alpha, 0.0), ophc::rho_star(alpha), 1e-10) << alpha;
  }
}

TEST(RhoStarGamma, ContinuousAtKink) {
  for (double gamma : {0.0, 0.3, 0.6}) {
    const double kink = (3.0 + gamma) / 4.0;
    const double eps = 1e-8;
    EXPECT_LT(std::abs(ophc::rho_star_gamma(kink - eps, gamma) - ophc::rho_star_gamma(kink + eps, gamma)), 1e-7);
    EXPECT_NEAR(ophc::rho_star_gamma(kink, gamma), (1.0 - gamma) / 4.0, 1e-10);
  }
}

TEST(RhoStarGamma, StrictlyBelowRhoStarForPositiveGamma) {
  for (double gamma : {0.1, 0.3, 0.6}) {
    const double lo = (1.0 + gamma) / 2.0;
    for (int k = 1; k <= 50; ++k) {
      const double alpha = lo + (1.0 - lo) * k / 51.0;
      EXPECT_LT(ophc::rho_star_gamma(alpha, gamma), ophc::rho_star(alpha)) << gamma << " " << alpha;
    }
  }
}

TEST(RhoStarGamma, NondecreasingInAlpha) {
  for (double gamma : {0.0, 0.3, 0.6}) {
    const double lo = std::max((1.0 + gamma) / 2.0, 0.5 + 1e-9);
    double prev_g = -1.0, prev = -1.0;
    for (int k = 0; k < 1000; ++k) {
      const double alpha = lo + (1.0 - lo) * k / 1000.0;
      const double g = ophc::rho_star_gamma(alpha, gamma);
      const double r = ophc::rho_star(alpha);
      EXPECT_GE(g, prev_g);
      EXPECT_GE(r, prev);
      prev_g = g;
      prev = r;
    }
  }
}

TEST(Classify, Examples) {
  EXPECT_EQ(ophc::classify({0.3, 0.9, 0.3}), Detectability::detectable);
  EXPECT_EQ(ophc::classify({0.3, 0.9, 0.2}), Detectability::undetectable);
  EXPECT_EQ(ophc::classify({0.3, 0.9, ophc::rho_star_gamma(0.9, 0.3)}), Detectability::on_boundary);
  EXPECT_EQ(ophc::classify({0.3, 0.9, ophc::rho_star_gamma(0.9, 0.3) + 5e-13}), Detectability::on_boundary);
  EXPECT_EQ(ophc::classify({0.3, 0.9, ophc::rho_star_gamma(0.9, 0.3) + 1e-9}), Detectability::detectable);
}

TEST(Classify, RejectsPointsOutsideRegion) {
  EXPECT_THROW((void)ophc::classify({0.3, 0.65, 0.1}), std::invalid_argument);
  EXPECT_THROW((void)ophc::classify({0.3, 1.0, 0.1}), std::invalid_argument);
  EXPECT_THROW((void)ophc::classify({0.3, 0.9, -0.1}), std::invalid_argument);
  EXPECT_EQ(ophc::to_string(Detectability::on_boundary), "on_boundary");
}

TEST(BoundaryCurve, Rows) {
  const std::vector<double> alphas{0.7, 0.8, 0.9};
  const auto rows = ophc::boundary_curve(0.3, alphas);
  ASSERT_EQ(rows.size(), 3u);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    EXPECT_EQ(rows[i].alpha, alphas[i]);
    EXPECT_EQ(rows[i].rho_star, ophc::rho_star(alphas[i]));
    EXPECT_EQ(rows[i].rho_star_gamma, ophc::rho_star_gamma(alphas[i], 0.3));
  }
  const std::vector<double> bad{0.6};
  EXPECT_THROW((void)ophc::boundary_curve(0.3, bad), std::invalid_argument);
}

}  // namespace
