#pragma once

#include <variant>
#include <vector>

#include <Eigen/Core>

#include "crawler/model.hpp"

namespace crawler {

struct Sinusoid {
  double amplitude = 1.0;
  double omega = 1.0;
  double phase = 0.0;
};

// Closed periodic cubic spline through N uniform samples over [0, period).
class SampledWaveform {
 public:
  SampledWaveform(double period, Eigen::VectorXd values);

  double operator()(double t) const;

  double period() const { return period_; }
  Eigen::Index size() const { return values_.size(); }
  const Eigen::VectorXd& values() const { return values_; }
  double spacing() const { return period_ / static_cast<double>(values_.size()); }

 private:
  double period_;
  Eigen::VectorXd values_;
  Eigen::VectorXd curvature_;  // spline second derivatives at the nodes
};

class ForcingSignal {
 public:
  static ForcingSignal Sinusoidal(double amplitude, double omega, double phase = 0.0);
  static ForcingSignal Sampled(double period, Eigen::VectorXd values);
  static ForcingSignal Zero() { return Sinusoidal(0.0, 1.0); }

  double operator()(double t) const;

  bool is_sampled() const { return std::holds_alternative<SampledWaveform>(signal_); }
  const SampledWaveform& sampled() const { return std::get<SampledWaveform>(signal_); }
  const Sinusoid& sinusoid() const { return std::get<Sinusoid>(signal_); }

  // Uniform samples over [0, period), the representation the optimizer updates.
  Eigen::VectorXd Sample(double period, Eigen::Index n) const;

 private:
  explicit ForcingSignal(std::variant<Sinusoid, SampledWaveform> s) : signal_(std::move(s)) {}
  std::variant<Sinusoid, SampledWaveform> signal_;
};

inline double eval_forcing(const ForcingSignal& sig, double t) { return sig(t); }

// Solves the cyclic system x[i-1] + 4 x[i] + x[i+1] = rhs[i] (indices mod n).
Eigen::VectorXd SolveCyclic141(const Eigen::VectorXd& rhs);

// Uniform-grid time history over [t0, t0 + T]; states are stored column-wise.
struct Trajectory {
  Eigen::VectorXd t;
  Eigen::Matrix<double, 4, Eigen::Dynamic> z;
  Eigen::VectorXd f;

  Eigen::Index steps() const { return t.size() - 1; }
  double step() const { return (t(t.size() - 1) - t(0)) / static_cast<double>(steps()); }
  double horizon() const { return t(t.size() - 1) - t(0); }
  StateVector state(Eigen::Index i) const { return z.col(i); }
};

// Classical fixed-step RK4 over [t0, t0 + T] with N steps.
Trajectory integrate(const StateVector& z0, const ForcingSignal& sig,
                     const DimensionlessGroups& g, double T, int N, double t0 = 0.0);

// Same flow, but only the final state is kept.
StateVector propagate(const StateVector& z0, const ForcingSignal& sig,
                      const DimensionlessGroups& g, double T, int N, double t0 = 0.0);

struct TrajectoryMetrics {
  double avg_com_speed = 0.0;
  double strain_amplitude = 0.0;
  double mean_total_friction = 0.0;
  double min_power = 0.0;
  double max_power = 0.0;
};

TrajectoryMetrics metrics(const Trajectory& traj, const DimensionlessGroups& g);

// Instantaneous actuation power f * (z3 - z4) at every grid point.
Eigen::VectorXd actuation_power(const Trajectory& traj);

// Trapezoidal rule for samples on a uniform grid with spacing h.
double trapezoid(const Eigen::Ref<const Eigen::VectorXd>& y, double h);

struct CostBreakdown {
  double displacement_term = 0.0;
  double effort_term = 0.0;
  double strain_term = 0.0;
  double total = 0.0;
};

CostBreakdown cost(const Trajectory& traj, double alpha, double beta);

struct SweepPoint {
  double omega = 0.0;
  double avg_com_speed = 0.0;
  double min_power = 0.0;
  double max_power = 0.0;
};

struct SweepOptions {
  double amplitude = 1.0;
  int settle_cycles = 30;
  int measure_cycles = 10;
  int steps_per_period = 1024;
};

// Steady-state CoM speed under amplitude * sin(omega t) for each omega. Grid
// points are evaluated concurrently; the result keeps the input order.
std::vector<SweepPoint> frequency_sweep(const DimensionlessGroups& g,
                                        const std::vector<double>& omega_grid,
                                        const SweepOptions& opts = {});

}  // namespace crawler
