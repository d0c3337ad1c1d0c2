#include "crawler/model.hpp"

#include <cmath>
#include <random>

#include <gtest/gtest.h>

#include "crawler/errors.hpp"

namespace crawler {
namespace {

DimensionlessGroups CaseStudy() { return DimensionlessGroups{}; }

TEST(Nondimensionalize, CaseStudyScales) {
  const DimensionalParams p{10.0, 1.0, 1.0, 0.2, 0.2, 0.1};
  const auto nd = nondimensionalize(p, FrictionParams::FromAnisotropy(1.2, 0.05));
  EXPECT_NEAR(nd.omega_n, 0.4472, 5e-5);
  EXPECT_NEAR(nd.groups.pi_f, 1.0, 1e-12);
  EXPECT_NEAR(nd.groups.pi_sigma, 1.0, 1e-12);
  EXPECT_NEAR(nd.groups.zeta, 0.2236, 5e-5);
  EXPECT_NEAR(nd.time_scale, 1.0 / nd.omega_n, 1e-15);
  EXPECT_DOUBLE_EQ(nd.length_scale, 0.1);
}

TEST(Nondimensionalize, ZeroDampingAndUnitFrequency) {
  const FrictionParams fp = FrictionParams::FromAnisotropy(1.2, 0.05);
  EXPECT_EQ(nondimensionalize({3.0, 2.0, 0.0, 1.0, 1.0, 1.0}, fp).groups.zeta, 0.0);
  EXPECT_DOUBLE_EQ(nondimensionalize({2.0, 1.0, 0.5, 1.0, 1.0, 1.0}, fp).omega_n, 1.0);
}

TEST(Nondimensionalize, RejectsNonPositive) {
  const FrictionParams fp = FrictionParams::FromAnisotropy(1.2, 0.05);
  EXPECT_THROW(nondimensionalize({0.0, 1.0, 1.0, 1.0, 1.0, 1.0}, fp), InvalidParameter);
  EXPECT_THROW(nondimensionalize({1.0, -1.0, 1.0, 1.0, 1.0, 1.0}, fp), InvalidParameter);
  EXPECT_THROW(nondimensionalize({1.0, 1.0, 1.0, 1.0, 1.0, 0.0}, fp), InvalidParameter);
}

TEST(FrictionOffset, ClosedFormAndZeroAtRest) {
  EXPECT_NEAR(friction_offset(1.2, 0.05), 0.11513, 5e-6);
  EXPECT_EQ(friction_offset(3.0, 0.7), 0.0);
  const FrictionParams fp = FrictionParams::FromAnisotropy(1.2, 0.05);
  EXPECT_LT(std::abs(sigmoid_friction(0.0, fp)), 1e-12);
  EXPECT_THROW(friction_offset(1.0, 0.05), NoZeroCrossing);
  EXPECT_THROW(friction_offset(0.5, 0.05), NoZeroCrossing);
}

TEST(SigmoidFriction, Asymptotes) {
  const FrictionParams fp = FrictionParams::FromAnisotropy(1.2, 0.05);
  EXPECT_NEAR(sigmoid_friction(50.0, fp), -fp.delta, 1e-14);
  EXPECT_NEAR(sigmoid_friction(-50.0, fp), 1.0, 1e-14);
}

TEST(SigmoidFriction, DerivativeMatchesCentralDifference) {
  const FrictionParams fp = FrictionParams::FromAnisotropy(1.2, 0.05);
  const double step = 1e-6;
  for (double v = -0.4; v <= 0.4; v += 0.01) {
    const double fd =
        (sigmoid_friction(v + step, fp) - sigmoid_friction(v - step, fp)) / (2.0 * step);
    const double exact = sigmoid_friction_deriv(v, fp);
    EXPECT_LT(std::abs(fd - exact) / std::abs(exact), 1e-6) << "v = " << v;
  }
}

TEST(SigmoidFriction, MonotoneAndBounded) {
  std::mt19937 rng(7);
  std::uniform_real_distribution<double> nf_dist(1.01, 2.9), eps_dist(0.005, 0.5),
      v_dist(-3.0, 3.0);
  for (int trial = 0; trial < 200; ++trial) {
    const FrictionParams fp = FrictionParams::FromAnisotropy(nf_dist(rng), eps_dist(rng));
    double v0 = v_dist(rng), v1 = v_dist(rng);
    if (v0 > v1) std::swap(v0, v1);
    EXPECT_GE(sigmoid_friction(v0, fp), sigmoid_friction(v1, fp));
    EXPECT_LE(sigmoid_friction_deriv(v0, fp), 0.0);
    for (double v : {v0, v1}) {
      EXPECT_GE(sigmoid_friction(v, fp), -0.5 * (fp.n_f - 1.0));
      EXPECT_LE(sigmoid_friction(v, fp), 1.0);
    }
  }
}

TEST(PiecewiseFriction, Branches) {
  EXPECT_EQ(piecewise_friction(0.5, 0.1), -0.1);
  EXPECT_EQ(piecewise_friction(0.0, 0.1), -0.1);
  EXPECT_EQ(piecewise_friction(-0.5, 0.1), 1.0);
}

TEST(PiecewiseFriction, SharpSigmoidLimit) {
  const FrictionParams fp = FrictionParams::FromAnisotropy(1.2, 1e-4);
  for (double v = -1.0; v <= 1.0; v += 0.001) {
    if (std::abs(v) < 0.01) continue;
    EXPECT_LT(std::abs(sigmoid_friction(v, fp) - piecewise_friction(v, fp.delta)), 1e-8);
  }
}

TEST(Rhs, Equilibrium) {
  EXPECT_TRUE(rhs(StateVector::Zero().eval(), 0.0, CaseStudy()).isZero(1e-12));
}

TEST(Rhs, PureSpring) {
  DimensionlessGroups g = CaseStudy();
  g.pi_sigma = 0.0;
  g.zeta = 0.0;
  const StateVector dz = rhs(StateVector(1, 0, 0, 0), 0.0, g);
  EXPECT_TRUE(dz.isApprox(StateVector(0, 0, -0.5, 0.5)));
}

// Dynamics re-evaluated in node coordinates and mapped back to z.
StateVector NodeCoordinateRhs(const StateVector& z, double f, const DimensionlessGroups& g) {
  const double x1 = 0.5 * (z(1) + z(0)), x2 = 0.5 * (z(1) - z(0));
  const double v1 = z(2), v2 = z(3);
  auto sigma = [&](double v) {
    const double u = (-v - g.friction.x_offset) / g.friction.eps_f;
    return 0.5 * ((1 + g.friction.n_f) / (1 + std::exp(-u)) + 1 - g.friction.n_f);
  };
  const double a1 = g.pi_sigma * sigma(v1) + 0.5 * (x2 - x1) + g.zeta * (v2 - v1) + g.pi_f * f;
  const double a2 = g.pi_sigma * sigma(v2) + 0.5 * (x1 - x2) + g.zeta * (v1 - v2) - g.pi_f * f;
  return {v1 - v2, v1 + v2, a1, a2};
}

TEST(Rhs, MatchesNodeCoordinates) {
  std::mt19937 rng(11);
  std::uniform_real_distribution<double> u(-2.0, 2.0), pos(0.0, 2.0);
  for (int trial = 0; trial < 500; ++trial) {
    DimensionlessGroups g;
    g.pi_f = pos(rng);
    g.pi_sigma = pos(rng);
    g.zeta = pos(rng);
    g.friction = FrictionParams::FromAnisotropy(1.0 + pos(rng) * 0.9 + 0.01, 0.01 + 0.1 * pos(rng));
    const StateVector z(u(rng), u(rng), u(rng), u(rng));
    const double f = u(rng);
    const StateVector dz = rhs(z, f, g);
    EXPECT_LT((dz - NodeCoordinateRhs(z, f, g)).cwiseAbs().maxCoeff(), 1e-12);
    // Kinematic rows and the internal-force cancellation in the sum.
    EXPECT_EQ(dz(0), z(2) - z(3));
    EXPECT_EQ(dz(1), z(2) + z(3));
    EXPECT_NEAR(dz(2) + dz(3),
                g.pi_sigma * (sigmoid_friction(z(2), g.friction) + sigmoid_friction(z(3), g.friction)),
                1e-12);
  }
}

TEST(Validation, GroupsAndFriction) {
  DimensionlessGroups g;
  g.zeta = -0.1;
  EXPECT_THROW(g.Validate(), InvalidParameter);
  EXPECT_THROW(FrictionParams::FromAnisotropy(3.5, 0.05), InvalidParameter);  // delta >= 1
  FrictionParams fp = FrictionParams::FromAnisotropy(1.2, 0.05);
  fp.x_offset = 0.0;
  EXPECT_THROW(fp.Validate(), InvalidParameter);
}

}  // namespace
}  // namespace crawler
