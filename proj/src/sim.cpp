#include "crawler/sim.hpp"

#include <cmath>
#include <future>
#include <numbers>
#include <sstream>

#include "crawler/errors.hpp"

namespace crawler {

Eigen::VectorXd SolveCyclic141(const Eigen::VectorXd& rhs) {
  const Eigen::Index n = rhs.size();
  if (n < 3) throw ContractViolation("cyclic system needs at least 3 unknowns");
  // Sherman-Morrison: A = B + u v^T with B tridiagonal, corner entries folded
  // into u = (gamma, 0, ..., 1), v = (1, 0, ..., 1 / gamma).
  const double gamma = -4.0;
  Eigen::VectorXd diag = Eigen::VectorXd::Constant(n, 4.0);
  diag(0) -= gamma;
  diag(n - 1) -= 1.0 / gamma;

  auto solve_tridiagonal = [&](Eigen::VectorXd d) {
    Eigen::VectorXd c(n);
    Eigen::VectorXd x(n);
    c(0) = 1.0 / diag(0);
    d(0) /= diag(0);
    for (Eigen::Index i = 1; i < n; ++i) {
      const double m = diag(i) - c(i - 1);
      c(i) = 1.0 / m;
      d(i) = (d(i) - d(i - 1)) / m;
    }
    x(n - 1) = d(n - 1);
    for (Eigen::Index i = n - 2; i >= 0; --i) x(i) = d(i) - c(i) * x(i + 1);
    return x;
  };

  Eigen::VectorXd u = Eigen::VectorXd::Zero(n);
  u(0) = gamma;
  u(n - 1) = 1.0;
  const Eigen::VectorXd y = solve_tridiagonal(rhs);
  const Eigen::VectorXd q = solve_tridiagonal(u);
  const double vy = y(0) + y(n - 1) / gamma;
  const double vq = q(0) + q(n - 1) / gamma;
  return y - q * (vy / (1.0 + vq));
}

SampledWaveform::SampledWaveform(double period, Eigen::VectorXd values)
    : period_(period), values_(std::move(values)) {
  if (!(period_ > 0.0)) throw InvalidParameter("sampled forcing period must be positive");
  if (values_.size() < 8) throw InvalidParameter("sampled forcing needs at least 8 samples");
  if (!values_.allFinite()) throw InvalidParameter("sampled forcing contains non-finite values");
  const Eigen::Index n = values_.size();
  const double h = spacing();
  Eigen::VectorXd second_diff(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const double prev = values_((i + n - 1) % n);
    const double next = values_((i + 1) % n);
    second_diff(i) = 6.0 * (prev - 2.0 * values_(i) + next) / (h * h);
  }
  curvature_ = SolveCyclic141(second_diff);
}

double SampledWaveform::operator()(double t) const {
  const Eigen::Index n = values_.size();
  const double h = spacing();
  double tau = std::fmod(t, period_);
  if (tau < 0.0) tau += period_;
  double cell = std::floor(tau / h);
  Eigen::Index i = static_cast<Eigen::Index>(cell);
  if (i >= n) i = n - 1;
  const Eigen::Index j = (i + 1) % n;
  const double s = (tau - static_cast<double>(i) * h) / h;
  const double a = 1.0 - s;
  return a * values_(i) + s * values_(j) +
         (h * h / 6.0) * ((a * a * a - a) * curvature_(i) + (s * s * s - s) * curvature_(j));
}

ForcingSignal ForcingSignal::Sinusoidal(double amplitude, double omega, double phase) {
  if (!(amplitude >= 0.0)) throw InvalidParameter("sinusoid amplitude must be non-negative");
  if (!(omega > 0.0)) throw InvalidParameter("sinusoid frequency must be positive");
  return ForcingSignal(Sinusoid{amplitude, omega, phase});
}

ForcingSignal ForcingSignal::Sampled(double period, Eigen::VectorXd values) {
  return ForcingSignal(SampledWaveform(period, std::move(values)));
}

double ForcingSignal::operator()(double t) const {
  if (const auto* s = std::get_if<Sinusoid>(&signal_)) {
    return s->amplitude * std::sin(s->omega * t + s->phase);
  }
  return std::get<SampledWaveform>(signal_)(t);
}

Eigen::VectorXd ForcingSignal::Sample(double period, Eigen::Index n) const {
  Eigen::VectorXd out(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    out(i) = (*this)(period * static_cast<double>(i) / static_cast<double>(n));
  }
  return out;
}

namespace {

void CheckHorizon(double T, int N) {
  if (!(T > 0.0)) throw InvalidParameter("integration horizon must be positive");
  if (N < 16) throw InvalidParameter("integration needs at least 16 steps");
}

// One RK4 step; forcing is sampled at t, t + h/2, t + h.
StateVector Rk4Step(const StateVector& z, double t, double h, const ForcingSignal& sig,
                    const DimensionlessGroups& g, double f0) {
  const double f_mid = sig(t + 0.5 * h);
  const double f1 = sig(t + h);
  const StateVector k1 = rhs(z, f0, g);
  const StateVector k2 = rhs<double>(z + 0.5 * h * k1, f_mid, g);
  const StateVector k3 = rhs<double>(z + 0.5 * h * k2, f_mid, g);
  const StateVector k4 = rhs<double>(z + h * k3, f1, g);
  return z + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
}

[[noreturn]] void ThrowDivergence(double t) {
  std::ostringstream msg;
  msg.precision(10);
  msg << "state became non-finite at t = " << t;
  throw Divergence(msg.str(), t);
}

}  // namespace

Trajectory integrate(const StateVector& z0, const ForcingSignal& sig,
                     const DimensionlessGroups& g, double T, int N, double t0) {
  CheckHorizon(T, N);
  const double h = T / N;
  Trajectory traj;
  traj.t.resize(N + 1);
  traj.z.resize(4, N + 1);
  traj.f.resize(N + 1);
  StateVector z = z0;
  for (int i = 0; i <= N; ++i) {
    const double t = t0 + h * i;
    traj.t(i) = t;
    traj.f(i) = sig(t);
    traj.z.col(i) = z;
    if (i < N) {
      z = Rk4Step(z, t, h, sig, g, traj.f(i));
      if (!z.allFinite()) ThrowDivergence(t + h);
    }
  }
  return traj;
}

StateVector propagate(const StateVector& z0, const ForcingSignal& sig,
                      const DimensionlessGroups& g, double T, int N, double t0) {
  CheckHorizon(T, N);
  const double h = T / N;
  StateVector z = z0;
  for (int i = 0; i < N; ++i) {
    const double t = t0 + h * i;
    z = Rk4Step(z, t, h, sig, g, sig(t));
    if (!z.allFinite()) ThrowDivergence(t + h);
  }
  return z;
}

double trapezoid(const Eigen::Ref<const Eigen::VectorXd>& y, double h) {
  const Eigen::Index n = y.size();
  if (n < 2) return 0.0;
  return h * (y.sum() - 0.5 * (y(0) + y(n - 1)));
}

Eigen::VectorXd actuation_power(const Trajectory& traj) {
  const Eigen::VectorXd strain_rate = (traj.z.row(2) - traj.z.row(3)).transpose();
  return traj.f.cwiseProduct(strain_rate);
}

TrajectoryMetrics metrics(const Trajectory& traj, const DimensionlessGroups& g) {
  TrajectoryMetrics m;
  const Eigen::Index n = traj.t.size();
  if (n < 2) throw ContractViolation("metrics need a non-empty trajectory");
  const double T = traj.horizon();
  m.avg_com_speed = (traj.z(1, n - 1) - traj.z(1, 0)) / (2.0 * T);
  m.strain_amplitude = traj.z.row(0).cwiseAbs().maxCoeff();
  Eigen::VectorXd friction(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    friction(i) = sigmoid_friction(traj.z(2, i), g.friction) +
                  sigmoid_friction(traj.z(3, i), g.friction);
  }
  m.mean_total_friction = trapezoid(friction, traj.step()) / T;
  const Eigen::VectorXd power = actuation_power(traj);
  m.min_power = power.minCoeff();
  m.max_power = power.maxCoeff();
  return m;
}

CostBreakdown cost(const Trajectory& traj, double alpha, double beta) {
  if (traj.z(1, 0) != 0.0) {
    throw ContractViolation("cost requires z2(0) = 0 on the trajectory");
  }
  const double T = traj.horizon();
  const double h = traj.step();
  const Eigen::VectorXd strain_sq = traj.z.row(0).transpose().array().square();
  CostBreakdown c;
  c.displacement_term = traj.z(1, traj.z.cols() - 1) / T;
  c.effort_term = alpha * trapezoid(traj.f.array().square().matrix(), h) / T;
  c.strain_term = beta * trapezoid(strain_sq, h) / T;
  c.total = c.displacement_term - c.effort_term - c.strain_term;
  return c;
}

std::vector<SweepPoint> frequency_sweep(const DimensionlessGroups& g,
                                        const std::vector<double>& omega_grid,
                                        const SweepOptions& opts) {
  g.Validate();
  if (opts.settle_cycles < 10) throw InvalidParameter("settle_cycles must be at least 10");
  if (opts.measure_cycles < 1) throw InvalidParameter("measure_cycles must be at least 1");
  for (double w : omega_grid) {
    if (!(w > 0.0)) throw InvalidParameter("sweep frequencies must be positive");
  }

  auto evaluate = [&g, &opts](double omega) {
    const ForcingSignal sig = ForcingSignal::Sinusoidal(opts.amplitude, omega);
    const double period = 2.0 * std::numbers::pi / omega;
    const int n = opts.steps_per_period;
    try {
      const StateVector settled =
          propagate(StateVector::Zero(), sig, g, period * opts.settle_cycles,
                    n * opts.settle_cycles);
      const Trajectory measured =
          integrate(settled, sig, g, period * opts.measure_cycles, n * opts.measure_cycles,
                    period * opts.settle_cycles);
      const TrajectoryMetrics m = metrics(measured, g);
      return SweepPoint{omega, m.avg_com_speed, m.min_power, m.max_power};
    } catch (const Divergence& e) {
      std::ostringstream msg;
      msg << e.what() << " (omega = " << omega << ")";
      throw Divergence(msg.str(), e.time());
    }
  };

  std::vector<std::future<SweepPoint>> jobs;
  jobs.reserve(omega_grid.size());
  for (double w : omega_grid) jobs.push_back(std::async(std::launch::async, evaluate, w));
  std::vector<SweepPoint> out;
  out.reserve(jobs.size());
  for (auto& job : jobs) out.push_back(job.get());
  return out;
}

}  // namespace crawler
