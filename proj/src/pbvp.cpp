#include "crawler/pbvp.hpp"

#include <cmath>
#include <sstream>

#include <Eigen/LU>

#include "crawler/errors.hpp"

namespace crawler {
namespace {

constexpr int kPeriodic[3] = {0, 2, 3};

StateVector Lift(const Eigen::Vector3d& xi) {
  return StateVector(xi(0), 0.0, xi(1), xi(2));
}

Eigen::Vector3d Project(const StateVector& z) { return {z(0), z(2), z(3)}; }

}  // namespace

Eigen::Vector3d PeriodicStateSolution::periodic_initial() const {
  return Project(trajectory.state(0));
}

PeriodicStateSolution solve_state_periodic(const DimensionlessGroups& g,
                                           const ForcingSignal& sig, double T, int N,
                                           std::optional<Eigen::Vector3d> guess,
                                           const ShootingOptions& opts) {
  g.Validate();
  Eigen::Vector3d xi;
  if (guess) {
    xi = *guess;
  } else {
    const StateVector settled =
        propagate(StateVector::Zero(), sig, g, T * opts.settle_cycles, N * opts.settle_cycles);
    xi = Project(settled);
  }

  auto residual_map = [&](const Eigen::Vector3d& x) -> Eigen::Vector3d {
    return Project(propagate(Lift(x), sig, g, T, N)) - x;
  };

  Eigen::Vector3d r = residual_map(xi);
  int iters = 0;
  while (r.cwiseAbs().maxCoeff() >= opts.tolerance) {
    if (iters >= opts.max_iters) {
      std::ostringstream msg;
      msg << "shooting did not converge in " << opts.max_iters
          << " Newton iterations (residual " << r.cwiseAbs().maxCoeff() << ")";
      throw NoPeriodicOrbit(msg.str(), r.cwiseAbs().maxCoeff());
    }
    Eigen::Matrix3d jac;
    for (int k = 0; k < 3; ++k) {
      Eigen::Vector3d xp = xi;
      xp(k) += opts.fd_step;
      jac.col(k) = (residual_map(xp) - r) / opts.fd_step;
    }
    Eigen::FullPivLU<Eigen::Matrix3d> lu(jac);
    lu.setThreshold(1e-6);
    if (!lu.isInvertible()) {
      throw DegenerateCycle("shooting Jacobian is singular; the periodic orbit is degenerate");
    }
    xi -= lu.solve(r);
    r = residual_map(xi);
    ++iters;
  }

  PeriodicStateSolution sol;
  sol.trajectory = integrate(Lift(xi), sig, g, T, N);
  const StateVector diff =
      sol.trajectory.state(sol.trajectory.steps()) - sol.trajectory.state(0);
  sol.residual = 0.0;
  for (int i : kPeriodic) sol.residual = std::max(sol.residual, std::abs(diff(i)));
  sol.newton_iters = iters;
  return sol;
}

std::pair<Eigen::Matrix4d, Eigen::Vector4d> costate_matrix(const StateVector& z,
                                                           const DimensionlessGroups& g,
                                                           double beta) {
  const double zeta = g.zeta;
  const double s3 = g.pi_sigma * sigmoid_friction_deriv(z(2), g.friction);
  const double s4 = g.pi_sigma * sigmoid_friction_deriv(z(3), g.friction);
  Eigen::Matrix4d M;
  // clang-format off
  M <<  0.0,  0.0,  0.5,         -0.5,
        0.0,  0.0,  0.0,          0.0,
       -1.0, -1.0,  zeta - s3,   -zeta,
        1.0, -1.0, -zeta,         zeta - s4;
  // clang-format on
  return {M, Eigen::Vector4d(2.0 * beta * z(0), 0.0, 0.0, 0.0)};
}

double CostateTrajectory::periodicity_residual() const {
  const Eigen::Index last = lambda.cols() - 1;
  double r = 0.0;
  for (int i : kPeriodic) r = std::max(r, std::abs(lambda(i, last) - lambda(i, 0)));
  return r;
}

CostateTrajectory solve_costate_periodic(const PeriodicStateSolution& sol,
                                         const DimensionlessGroups& g, double beta) {
  const Trajectory& traj = sol.trajectory;
  const Eigen::Index steps = traj.steps();
  const double h = traj.step();
  const double T = traj.horizon();

  // State at the half steps from the cubic Hermite interpolant of the nodes,
  // which keeps the co-state RK4 fourth-order accurate.
  std::vector<Eigen::Matrix3d> R(2 * steps + 1);
  std::vector<Eigen::Vector3d> r(2 * steps + 1);
  auto reduce = [&](const StateVector& z, std::size_t k) {
    const auto [M, c] = costate_matrix(z, g, beta);
    for (int i = 0; i < 3; ++i) {
      for (int j = 0; j < 3; ++j) R[k](i, j) = M(kPeriodic[i], kPeriodic[j]);
      // lambda2 = 1 folds its column into the constant term.
      r[k](i) = c(kPeriodic[i]) + M(kPeriodic[i], 1);
    }
  };
  for (Eigen::Index i = 0; i <= steps; ++i) {
    reduce(traj.state(i), static_cast<std::size_t>(2 * i));
    if (i < steps) {
      const StateVector z0 = traj.state(i);
      const StateVector z1 = traj.state(i + 1);
      const StateVector dz0 = rhs(z0, traj.f(i), g);
      const StateVector dz1 = rhs(z1, traj.f(i + 1), g);
      const StateVector mid = 0.5 * (z0 + z1) + (h / 8.0) * (dz0 - dz1);
      reduce(mid, static_cast<std::size_t>(2 * i + 1));
    }
  }

  // The adjoint flow is unstable forward in time wherever the state flow is
  // stable, so the periodic solve and reconstruction run in reversed time
  // s = T - t, where d(mu)/ds = -R mu - r.
  const std::size_t last = R.size() - 1;
  std::vector<Eigen::Matrix3d> Rb(R.size());
  std::vector<Eigen::Vector3d> rb(r.size());
  for (std::size_t k = 0; k <= last; ++k) {
    Rb[k] = -R[last - k];
    rb[k] = -r[last - k];
  }
  const auto mono = monodromy<3>(std::span<const Eigen::Matrix3d>(Rb),
                                 std::span<const Eigen::Vector3d>(rb), T);
  const Eigen::Matrix3d system = Eigen::Matrix3d::Identity() - mono.phi;
  Eigen::FullPivLU<Eigen::Matrix3d> lu(system);
  lu.setThreshold(1e-10);
  if (!lu.isInvertible()) {
    throw ResonantAdjoint("I - monodromy is singular; the periodic co-state is not unique");
  }

  CostateTrajectory out;
  out.t = traj.t;
  out.phi = mono.phi;
  out.psi = mono.psi;
  out.initial = lu.solve(mono.psi);
  out.lambda.resize(4, steps + 1);

  Eigen::Vector3d mu = out.initial;
  auto field = [&](std::size_t k, const Eigen::Vector3d& x) -> Eigen::Vector3d {
    return Rb[k] * x + rb[k];
  };
  for (Eigen::Index j = 0; j <= steps; ++j) {
    out.lambda.col(steps - j) << mu(0), 1.0, mu(1), mu(2);
    if (j == steps) break;
    const std::size_t k = static_cast<std::size_t>(2 * j);
    const Eigen::Vector3d k1 = field(k, mu);
    const Eigen::Vector3d k2 = field(k + 1, mu + 0.5 * h * k1);
    const Eigen::Vector3d k3 = field(k + 1, mu + 0.5 * h * k2);
    const Eigen::Vector3d k4 = field(k + 2, mu + h * k3);
    mu += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
  }
  return out;
}

}  // namespace crawler
