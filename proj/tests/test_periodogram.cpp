#include <gtest/gtest.h>

#include <cmath>
#include <random>
#include <stdexcept>

#include "ophc/periodogram.hpp"
#include "ophc/signal_model.hpp"
#include "oracles.hpp"

namespace {

using ophc::ComplexSeries;
using ophc::cplx;
using ophc::QMode;
using ophc::RngHandle;

ComplexSeries random_series(std::size_t n, std::uint64_t seed) {
  return ophc::sample_complex_normal(n, 1.0, RngHandle{seed, 0});
}

TEST(QRule, Examples) {
  EXPECT_EQ(ophc::q_rule(1000, QMode::simulation), 14000u);
  EXPECT_EQ(ophc::q_rule(1000, QMode::theory), 7000u);
  EXPECT_EQ(ophc::q_rule(1000, QMode::standard), 1000u);
  EXPECT_EQ(ophc::q_rule(1000, QMode::full, 1'000'000), 1'000'000u);
  EXPECT_THROW((void)ophc::q_rule(1000, QMode::full), std::invalid_argument);
  EXPECT_THROW((void)ophc::q_rule(1, QMode::standard), std::invalid_argument);
}

TEST(QRule, TheoryAndSimulationAreMultiplesOfN) {
  for (std::size_t n : {2u, 10u, 64u, 999u, 4096u}) {
    EXPECT_EQ(ophc::q_rule(n, QMode::theory) % n, 0u);
    EXPECT_EQ(ophc::q_rule(n, QMode::simulation), 2 * ophc::q_rule(n, QMode::theory));
  }
}

TEST(QMode, ParseRoundTrip) {
  for (QMode m : {QMode::theory, QMode::simulation, QMode::standard, QMode::full}) {
    EXPECT_EQ(ophc::parse_q_mode(ophc::to_string(m)), m);
  }
  EXPECT_FALSE(ophc::parse_q_mode("oversampled").has_value());
}

TEST(Transform, ImpulseIsFlat) {
  std::vector<cplx> y(50, cplx(0, 0));
  y[0] = 1.0;
  for (std::size_t q : {7u, 50u, 350u, 5000u}) {
    const auto v = ophc::oversampled_transform(ComplexSeries(y), q);
    ASSERT_EQ(v.q(), q);
    for (std::size_t m = 0; m < q; ++m) {
      EXPECT_NEAR(std::abs(v.spectrum()[m] - cplx(1.0 / std::sqrt(50.0), 0)), 0.0, 1e-14);
      EXPECT_NEAR(v.intensities()[m], 1.0 / 50.0, 1e-15);
    }
  }
}

TEST(Transform, OnGridToneRoundTrip) {
  const std::size_t n = 40;
  const std::int64_t tau = 9;
  const cplx c(2.5, -1.0);
  std::vector<cplx> y(n);
  for (std::size_t j = 0; j < n; ++j) {
    y[j] = c / std::sqrt(static_cast<double>(n)) *
           std::polar(1.0, -ophc::kTwoPi * static_cast<double>(j) * static_cast<double>(tau - 1) / n);
  }
  const auto v = ophc::oversampled_transform(ComplexSeries(y), n);
  for (std::size_t m = 0; m < n; ++m) {
    const cplx expected = (static_cast<std::int64_t>(m) + 1 == tau) ? c : cplx(0, 0);
    EXPECT_NEAR(std::abs(v.spectrum()[m] - expected), 0.0, 1e-12) << "m=" << m + 1;
  }
}

TEST(Transform, ParsevalAtQEqualsN) {
  for (std::size_t n : {16u, 100u, 5000u}) {
    const auto y = random_series(n, n);
    const auto v = ophc::oversampled_transform(y, n);
    double energy_t = 0.0, energy_f = 0.0;
    for (const auto& z : y.samples()) energy_t += std::norm(z);
    for (double i : v.intensities()) energy_f += i;
    EXPECT_NEAR(energy_f, energy_t, 1e-9 * energy_t) << "n=" << n;
  }
}

TEST(Transform, DirectMatchesLongDoubleOracle) {
  for (std::size_t q : {5u, 32u, 97u, 256u}) {
    const auto y = random_series(32, q);
    const auto v = ophc::transform_direct(y, q);
    const auto ref = oracle::transform(y.samples(), q);
    for (std::size_t m = 0; m < q; ++m) EXPECT_NEAR(std::abs(v.spectrum()[m] - ref[m]), 0.0, 1e-12);
  }
}

TEST(Transform, FastPathMatchesDirectOnRandomInstances) {
  std::mt19937_64 eng(4096);
  std::uniform_int_distribution<std::size_t> n_dist(1, 256), q_dist(1, 4096);
  double worst = 0.0;
  for (int k = 0; k < 100; ++k) {
    const std::size_t n = n_dist(eng), q = q_dist(eng);
    const auto y = random_series(n, 1000 + static_cast<std::uint64_t>(k));
    const auto fast = ophc::transform_fft(y, q);
    const auto direct = ophc::transform_direct(y, q);
    for (std::size_t m = 0; m < q; ++m) {
      worst = std::max(worst, std::abs(fast.spectrum()[m] - direct.spectrum()[m]));
    }
  }
  EXPECT_LT(worst, 1e-9);
}

TEST(Transform, ShortTransformFoldsSeries) {
  // q < N aliases samples j and j + q onto the same frequency grid.
  const auto y = random_series(100, 5);
  const auto fast = ophc::transform_fft(y, 30);
  const auto ref = oracle::transform(y.samples(), 30);
  for (std::size_t m = 0; m < 30; ++m) EXPECT_NEAR(std::abs(fast.spectrum()[m] - ref[m]), 0.0, 1e-12);
}

TEST(Transform, RejectsZeroLength) {
  EXPECT_THROW((void)ophc::transform_direct(random_series(4, 1), 0), std::invalid_argument);
  EXPECT_THROW((void)ophc::transform_fft(random_series(4, 1), 0), std::invalid_argument);
}

TEST(Transform, NullMarginals) {
  // Pool 200 series of N=100 at q=700 (L=7): 1.4e5 intensities.
  double sum = 0.0;
  std::size_t total = 0;
  std::size_t exceed_1 = 0, exceed_15 = 0;
  for (std::uint64_t k = 0; k < 200; ++k) {
    const auto v = ophc::oversampled_transform(random_series(100, 50'000 + k), 700);
    for (double i : v.intensities()) {
      sum += i;
      exceed_1 += i > 1.0 ? 1 : 0;
      exceed_15 += i > 2.25 ? 1 : 0;
      ++total;
    }
  }
  const double t = static_cast<double>(total);
  EXPECT_NEAR(sum / t, 1.0, 0.02);
  EXPECT_NEAR(exceed_1 / t, std::exp(-1.0), 0.01);
  EXPECT_NEAR(exceed_15 / t, std::exp(-2.25), 0.01);
}

TEST(CrossCorrelation, LatticeIndependenceAndDecay) {
  constexpr std::size_t n = 16, L = 4, q = n * L;
  for (std::int64_t m1 = 1; m1 <= static_cast<std::int64_t>(q); ++m1) {
    for (std::int64_t m2 = 1; m2 <= static_cast<std::int64_t>(q); ++m2) {
      const cplx xi = ophc::null_cross_correlation(m1, m2, n, q);
      const cplx ref = oracle::cross_correlation(m1, m2, n, q);
      EXPECT_NEAR(std::abs(xi - ref), 0.0, 1e-13) << m1 << "," << m2;
      if ((m1 - m2) % static_cast<std::int64_t>(L) == 0) {
        if (m1 == m2) {
          EXPECT_EQ(xi, cplx(1, 0));
        } else {
          EXPECT_EQ(xi, cplx(0, 0)) << m1 << "," << m2;
        }
      } else {
        const double d = ophc::circle_distance(static_cast<double>(m1 - 1) / q, static_cast<double>(m2 - 1) / q);
        EXPECT_LE(std::abs(xi), 1.0 / (2.0 * n * d)) << m1 << "," << m2;
      }
    }
  }
}

TEST(CrossCorrelation, MatchesEmpiricalCovariance) {
  constexpr std::size_t n = 16, q = 64;
  const std::int64_t m1 = 3, m2 = 4;
  cplx acc(0, 0);
  constexpr int draws = 20000;
  for (int k = 0; k < draws; ++k) {
    const auto v = ophc::oversampled_transform(random_series(n, 900'000 + static_cast<std::uint64_t>(k)), q);
    acc += v.spectrum()[m1 - 1] * std::conj(v.spectrum()[m2 - 1]);
  }
  acc /= static_cast<double>(draws);
  EXPECT_LT(std::abs(acc - ophc::null_cross_correlation(m1, m2, n, q)), 5.0 / std::sqrt(draws));
}

}  // namespace
