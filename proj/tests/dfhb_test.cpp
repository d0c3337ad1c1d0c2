#include "crawler/dfhb.hpp"

#include <cmath>
#include <numbers>
#include <random>

#include <gtest/gtest.h>

#include "crawler/errors.hpp"
#include "oracles.hpp"

namespace crawler {
namespace {

constexpr double kPi = std::numbers::pi;

TEST(FrictionFourier, FullyForwardCycle) {
  const auto c = friction_fourier_coeffs(1.0, 0.0, 0.1);
  EXPECT_NEAR(c.c0, -0.1, 1e-15);
  EXPECT_EQ(c.c1, 0.0);
  EXPECT_EQ(c.c2, 0.0);
}

TEST(FrictionFourier, ZeroBiasLimit) {
  const auto c = friction_fourier_coeffs(1e-14, 0.0, 0.1);
  EXPECT_NEAR(c.c0, 0.45, 1e-12);
  EXPECT_NEAR(c.c1, -2.2 / kPi, 1e-12);
  EXPECT_NEAR(c.c1, -0.7003, 5e-5);
  EXPECT_EQ(c.c2, 0.0);
  const auto q = testing::FrictionFourierByQuadrature(1e-14, 0.0, 0.1);
  EXPECT_NEAR(q.c0, c.c0, 1e-10);
  EXPECT_NEAR(q.c1, c.c1, 1e-10);
  EXPECT_NEAR(q.c2, c.c2, 1e-10);
}

TEST(FrictionFourier, MatchesQuadrature) {
  std::mt19937 rng(21);
  std::uniform_real_distribution<double> a(1e-3, 1.0), th(-kPi, kPi), d(0.01, 0.99);
  for (int trial = 0; trial < 25; ++trial) {
    const double av = a(rng), tv = th(rng), dv = d(rng);
    const auto c = friction_fourier_coeffs(av, tv, dv);
    const auto q = testing::FrictionFourierByQuadrature(av, tv, dv);
    EXPECT_NEAR(c.c0, q.c0, 1e-8);
    EXPECT_NEAR(c.c1, q.c1, 1e-8);
    EXPECT_NEAR(c.c2, q.c2, 1e-8);
  }
}

TEST(FrictionFourier, SignStructure) {
  for (double a : {0.1, 0.5, 0.9}) {
    EXPECT_LE(friction_fourier_coeffs(a, 0.0, 0.2).c1, 0.0);
    EXPECT_EQ(friction_fourier_coeffs(a, 0.0, 0.2).c2, 0.0);
    EXPECT_NEAR(friction_fourier_coeffs(a, kPi, 0.2).c2, 0.0, 1e-15);
    EXPECT_LE(std::abs(friction_fourier_coeffs(a, 1.0, 0.2).c0), 1.0);
  }
}

TEST(FrictionFourier, OutOfRegime) {
  EXPECT_THROW(friction_fourier_coeffs(0.0, 0.0, 0.1), OutOfRegime);
  EXPECT_THROW(friction_fourier_coeffs(1.1, 0.0, 0.1), OutOfRegime);
  EXPECT_THROW(friction_fourier_coeffs(0.5, 0.0, 1.0), InvalidParameter);
}

TEST(HbSolve, VanishingAnisotropy) {
  DimensionlessGroups g;
  g.zeta = 0.2236;
  const HbSolution s = hb_solve(g, 1e-12, 1.0);
  EXPECT_NEAR(s.a, 1.0, 1e-12);
  EXPECT_NEAR(s.phi, kPi / 2, 1e-10);
  EXPECT_NEAR(s.A, 1.0 / 0.2236, 1e-6);
  EXPECT_NEAR(s.A, 4.472, 1e-3);
  EXPECT_NEAR(s.v_bar, 1.0 / (2 * 0.2236), 1e-6);
}

TEST(HbSolve, ReconstructedPhaseIsConsistent) {
  std::mt19937 rng(2);
  std::uniform_real_distribution<double> w(0.2, 3.0), z(0.05, 1.0), pf(0.5, 2.0), ps(0.0, 0.5),
      d(0.01, 0.5);
  for (int trial = 0; trial < 200; ++trial) {
    DimensionlessGroups g;
    g.pi_f = pf(rng);
    g.pi_sigma = ps(rng);
    g.zeta = z(rng);
    const double delta = d(rng), omega = w(rng);
    const HbSolution s = hb_solve(g, delta, omega);
    const double c = 2 * g.pi_sigma * (1 + delta) / kPi * std::sqrt(1 - s.a * s.a);
    const double sin_phi = (g.zeta * s.A * omega + c) / g.pi_f;
    const double cos_phi = s.A * (1 - omega * omega) / (2 * g.pi_f);
    EXPECT_NEAR(sin_phi * sin_phi + cos_phi * cos_phi, 1.0, 1e-10);
    EXPECT_NEAR(std::sin(s.phi), sin_phi, 1e-10);
    EXPECT_NEAR(std::cos(s.phi), cos_phi, 1e-10);
    EXPECT_NEAR(s.v_tilde, omega * s.A / 2, 1e-14);
    EXPECT_NEAR(s.v_bar, s.a * s.v_tilde, 1e-14);
    EXPECT_EQ(s.theta1, 0.0);
    EXPECT_EQ(s.theta2, kPi);
    // The speed ratio depends on delta only.
    EXPECT_EQ(s.a, std::cos(delta * kPi / (1 + delta)));
  }
}

TEST(HbSolve, CaseStudyResonance) {
  const DimensionlessGroups g;
  const HbSolution s = hb_solve(g, 0.1, 1.0);
  EXPECT_NEAR(s.phi, kPi / 2, 1e-10);
  EXPECT_NEAR(s.v_bar, optimal_speed(g, 0.1), 1e-10);
}

TEST(HbSolve, FrictionDominates) {
  DimensionlessGroups g;
  g.pi_sigma = 20.0;
  EXPECT_THROW(hb_solve(g, 0.1, 1.0), FrictionDominates);
  EXPECT_LT(optimal_speed(g, 0.1), 0.0);
}

TEST(OptimalSpeed, Values) {
  const DimensionlessGroups g;
  EXPECT_NEAR(optimal_speed(g, 0.1), 1.722, 5e-4);
  EXPECT_NEAR(optimal_speed(g, 1e-12), 1.0 / (2 * g.zeta), 1e-9);
}

TEST(HbCurve, PeakAtResonance) {
  const DimensionlessGroups g;
  std::vector<double> grid;
  for (int i = 0; i <= 34; ++i) grid.push_back(0.3 + 0.05 * i);
  const auto curve = hb_speed_curve(g, 0.1, grid);
  std::size_t best = 0;
  for (std::size_t i = 0; i < curve.size(); ++i) {
    ASSERT_TRUE(curve[i].v_com.has_value());
    if (*curve[i].v_com > *curve[best].v_com) best = i;
  }
  EXPECT_NEAR(grid[best], 1.0, 1e-12);
  EXPECT_NEAR(*curve[best].v_com, optimal_speed(g, 0.1), 1e-10);

  const auto three = hb_speed_curve(g, 0.1, {0.8, 1.0, 1.2});
  EXPECT_LT(*three[0].v_com, *three[1].v_com);
  EXPECT_LT(*three[2].v_com, *three[1].v_com);
}

TEST(HbCurve, NegativeCurvatureAtPeak) {
  const DimensionlessGroups g;
  const double h = 1e-3;
  const auto c = hb_speed_curve(g, 0.1, {1.0 - h, 1.0, 1.0 + h});
  const double second = (*c[0].v_com - 2 * *c[1].v_com + *c[2].v_com) / (h * h);
  EXPECT_LT(second, 0.0);
}

TEST(HbCurve, EmbedsPerPointErrors) {
  DimensionlessGroups g;
  g.pi_sigma = 20.0;
  const auto c = hb_speed_curve(g, 0.1, {1.0});
  ASSERT_EQ(c.size(), 1u);
  EXPECT_FALSE(c[0].v_com.has_value());
  EXPECT_FALSE(c[0].note.empty());
}

}  // namespace
}  // namespace crawler
