#pragma once

#include <optional>
#include <span>
#include <utility>
#include <vector>

#include <Eigen/Core>

#include "crawler/model.hpp"
#include "crawler/sim.hpp"

namespace crawler {

// Periodic in (z1, z3, z4), with z2(0) = 0.
struct PeriodicStateSolution {
  Trajectory trajectory;
  double residual = 0.0;
  int newton_iters = 0;

  // (z1, z3, z4) at t = 0.
  Eigen::Vector3d periodic_initial() const;
};

struct ShootingOptions {
  int max_iters = 50;
  double fd_step = 1e-7;
  double tolerance = 1e-11;
  int settle_cycles = 30;  // cold start only
};

// Newton shooting on the three periodic components. Without a guess the
// orbit is first approached by settling from rest.
PeriodicStateSolution solve_state_periodic(const DimensionlessGroups& g,
                                           const ForcingSignal& sig, double T, int N,
                                           std::optional<Eigen::Vector3d> guess = std::nullopt,
                                           const ShootingOptions& opts = {});

// lambda' = M(z) lambda + c(z).
std::pair<Eigen::Matrix4d, Eigen::Vector4d> costate_matrix(const StateVector& z,
                                                           const DimensionlessGroups& g,
                                                           double beta);

template <int Dim>
struct MonodromyResult {
  Eigen::Matrix<double, Dim, Dim> phi;
  Eigen::Matrix<double, Dim, 1> psi;
};

/// Fundamental matrix and affine offset of x' = M(t) x + c(t) over one
/// period, by RK4 on a uniform grid. Coefficients are sampled on the
/// half-step grid: entry 2i is node i, entry 2i + 1 the midpoint of step i,
/// so 2N + 1 samples for N steps.
template <int Dim>
MonodromyResult<Dim> monodromy(std::span<const Eigen::Matrix<double, Dim, Dim>> M,
                               std::span<const Eigen::Matrix<double, Dim, 1>> c, double T) {
  using Mat = Eigen::Matrix<double, Dim, Dim>;
  using Vec = Eigen::Matrix<double, Dim, 1>;
  const std::size_t steps = (M.size() - 1) / 2;
  const double h = T / static_cast<double>(steps);
  // Stack [Phi | p] so both advance with the same stages.
  using Aug = Eigen::Matrix<double, Dim, Dim + 1>;
  Aug x = Aug::Zero();
  x.template leftCols<Dim>() = Mat::Identity();
  auto field = [&](std::size_t k, const Aug& y) {
    Aug d;
    d.template leftCols<Dim>() = M[k] * y.template leftCols<Dim>();
    d.col(Dim) = M[k] * y.col(Dim) + c[k];
    return d;
  };
  for (std::size_t i = 0; i < steps; ++i) {
    const std::size_t k = 2 * i;
    const Aug k1 = field(k, x);
    const Aug k2 = field(k + 1, x + 0.5 * h * k1);
    const Aug k3 = field(k + 1, x + 0.5 * h * k2);
    const Aug k4 = field(k + 2, x + h * k3);
    x += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
  }
  return {x.template leftCols<Dim>(), Vec(x.col(Dim))};
}

struct CostateTrajectory {
  Eigen::VectorXd t;
  Eigen::Matrix<double, 4, Eigen::Dynamic> lambda;
  // Reduced (lambda1, lambda3, lambda4) data of the reversed-time solve:
  // mu(0) = phi * mu(T) + psi, and `initial` is the periodic value
  // mu(0) = mu(T).
  Eigen::Matrix3d phi;
  Eigen::Vector3d psi;
  Eigen::Vector3d initial;

  double periodicity_residual() const;
};

CostateTrajectory solve_costate_periodic(const PeriodicStateSolution& sol,
                                         const DimensionlessGroups& g, double beta);

}  // namespace crawler
