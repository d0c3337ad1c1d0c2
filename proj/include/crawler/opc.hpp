#pragma once

#include <functional>
#include <numbers>
#include <vector>

#include <Eigen/Core>

#include "crawler/model.hpp"
#include "crawler/pbvp.hpp"
#include "crawler/sim.hpp"

namespace crawler {

struct OpcConfig {
  double alpha = 3.3;
  double beta = 0.05;
  double T = 2.0 * std::numbers::pi;
  double epsilon = 0.01;
  int grid_n = 300;
  int max_iters = 20000;
  double tol_grad = 1e-4;
  double tol_cost = 1e-8;
  int steps_per_period = 1024;
  int stagnation_window = 20;
  // Halve epsilon and retry instead of failing when a step lowers J.
  bool backtrack = false;

  void Validate() const;
};

struct OpcProgress {
  int iter = 0;
  double J = 0.0;
  double grad_norm = 0.0;
  double residual = 0.0;
};

struct OpcResult {
  ForcingSignal forcing = ForcingSignal::Zero();
  PeriodicStateSolution state;
  CostateTrajectory costate;
  std::vector<double> cost_history;
  std::vector<OpcProgress> progress;
  bool converged = false;
  int iterations = 0;
};

// Ascent direction pi_f (lambda3 - lambda4) - 2 alpha f on the co-state grid.
Eigen::VectorXd gradient_direction(const CostateTrajectory& costate,
                                   const Eigen::Ref<const Eigen::VectorXd>& forcing,
                                   const DimensionlessGroups& g, double alpha);

// J of the periodic orbit driven by sig; the orbit is returned through
// `orbit` when non-null. Used both by the optimizer and by gradient checks.
double periodic_cost(const DimensionlessGroups& g, const ForcingSignal& sig, double alpha,
                     double beta, double T, int N, PeriodicStateSolution* orbit = nullptr,
                     std::optional<Eigen::Vector3d> guess = std::nullopt);

using OpcObserver = std::function<void(const OpcProgress&)>;

OpcResult hill_climb(const DimensionlessGroups& g, const OpcConfig& cfg, const ForcingSignal& f0,
                     const OpcObserver& observer = {});

struct DominantFrequency {
  int harmonic = 0;
  double purity = 0.0;
};

DominantFrequency dominant_frequency(const ForcingSignal& forcing);

}  // namespace crawler
