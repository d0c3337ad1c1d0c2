#include "crawler/opc.hpp"

#include <cmath>
#include <complex>
#include <sstream>

#include <unsupported/Eigen/FFT>

#include "crawler/errors.hpp"

namespace crawler {

void OpcConfig::Validate() const {
  auto positive = [](double v, const char* name) {
    if (!(v > 0.0) || !std::isfinite(v)) {
      throw InvalidParameter(std::string("opc ") + name + " must be positive");
    }
  };
  positive(alpha, "alpha");
  positive(beta, "beta");
  positive(T, "T");
  positive(epsilon, "epsilon");
  positive(tol_grad, "tol_grad");
  positive(tol_cost, "tol_cost");
  if (grid_n < 64) throw InvalidParameter("opc grid_n must be at least 64");
  if (max_iters < 1) throw InvalidParameter("opc max_iters must be positive");
  if (steps_per_period < 16) throw InvalidParameter("opc steps_per_period must be at least 16");
  if (stagnation_window < 1) throw InvalidParameter("opc stagnation_window must be positive");
}

Eigen::VectorXd gradient_direction(const CostateTrajectory& costate,
                                   const Eigen::Ref<const Eigen::VectorXd>& forcing,
                                   const DimensionlessGroups& g, double alpha) {
  if (forcing.size() != costate.lambda.cols()) {
    throw ContractViolation("forcing and co-state must share the time grid");
  }
  const Eigen::VectorXd diff = (costate.lambda.row(2) - costate.lambda.row(3)).transpose();
  return g.pi_f * diff - 2.0 * alpha * forcing;
}

double periodic_cost(const DimensionlessGroups& g, const ForcingSignal& sig, double alpha,
                     double beta, double T, int N, PeriodicStateSolution* orbit,
                     std::optional<Eigen::Vector3d> guess) {
  PeriodicStateSolution sol = solve_state_periodic(g, sig, T, N, guess);
  const double J = cost(sol.trajectory, alpha, beta).total;
  if (orbit != nullptr) *orbit = std::move(sol);
  return J;
}

namespace {

struct Iterate {
  Eigen::VectorXd samples;
  PeriodicStateSolution state;
  CostateTrajectory costate;
  Eigen::VectorXd update;  // delta f at the sample times
  double J = 0.0;
  double grad_norm = 0.0;
};

Iterate Evaluate(const DimensionlessGroups& g, const OpcConfig& cfg, Eigen::VectorXd samples,
                 std::optional<Eigen::Vector3d> guess) {
  Iterate it;
  it.samples = std::move(samples);
  const ForcingSignal sig = ForcingSignal::Sampled(cfg.T, it.samples);
  it.J = periodic_cost(g, sig, cfg.alpha, cfg.beta, cfg.T, cfg.steps_per_period, &it.state,
                       guess);
  it.costate = solve_costate_periodic(it.state, g, cfg.beta);
  const Eigen::VectorXd direction =
      gradient_direction(it.costate, it.state.trajectory.f, g, cfg.alpha);
  // Carry the direction from the integration grid to the forcing samples
  // through the same periodic spline used for the forcing itself.
  const ForcingSignal on_grid =
      ForcingSignal::Sampled(cfg.T, direction.head(direction.size() - 1));
  it.update = on_grid.Sample(cfg.T, cfg.grid_n);
  it.grad_norm = it.update.cwiseAbs().maxCoeff();
  return it;
}

}  // namespace

OpcResult hill_climb(const DimensionlessGroups& g, const OpcConfig& cfg, const ForcingSignal& f0,
                     const OpcObserver& observer) {
  g.Validate();
  cfg.Validate();
  if (f0.is_sampled() && std::abs(f0.sampled().period() - cfg.T) > 1e-12) {
    throw ContractViolation("initial forcing period must equal the horizon T");
  }

  OpcResult result;
  auto record = [&](int n, const Iterate& it) {
    OpcProgress p{n, it.J, it.grad_norm, it.state.residual};
    result.cost_history.push_back(it.J);
    result.progress.push_back(p);
    if (observer) observer(p);
  };
  auto with_context = [](int n, const Error& e) {
    std::ostringstream msg;
    msg << "hill climbing iteration " << n << ": " << e.what();
    return msg.str();
  };

  Iterate current;
  try {
    current = Evaluate(g, cfg, f0.Sample(cfg.T, cfg.grid_n), std::nullopt);
  } catch (const SolverError& e) {
    throw SolverError(with_context(0, e));
  }
  record(0, current);
  Iterate best = current;

  double epsilon = cfg.epsilon;
  int stagnant = 0;
  int n = 0;
  while (true) {
    if (current.grad_norm < cfg.tol_grad) {
      result.converged = true;
      break;
    }
    if (stagnant >= cfg.stagnation_window) {
      result.converged = true;
      break;
    }
    if (n >= cfg.max_iters) break;
    ++n;

    Iterate next;
    while (true) {
      try {
        next = Evaluate(g, cfg, current.samples + epsilon * current.update,
                        current.state.periodic_initial());
      } catch (const SolverError& e) {
        throw SolverError(with_context(n, e));
      }
      if (next.J >= current.J - 10.0 * cfg.tol_cost) break;
      if (!cfg.backtrack || epsilon < 1e-12) {
        std::ostringstream msg;
        msg << "cost decreased from " << current.J << " to " << next.J << " at iteration " << n
            << "; reduce the step size epsilon (currently " << epsilon << ")";
        throw StepSizeError(msg.str());
      }
      epsilon *= 0.5;
    }

    stagnant = std::abs(next.J - current.J) < cfg.tol_cost ? stagnant + 1 : 0;
    current = std::move(next);
    record(n, current);
    if (current.J > best.J) best = current;
  }

  result.iterations = n;
  result.forcing = ForcingSignal::Sampled(cfg.T, best.samples);
  result.state = std::move(best.state);
  result.costate = std::move(best.costate);
  return result;
}

DominantFrequency dominant_frequency(const ForcingSignal& forcing) {
  if (!forcing.is_sampled()) {
    throw ContractViolation("dominant_frequency needs a sampled forcing signal");
  }
  const Eigen::VectorXd& x = forcing.sampled().values();
  const Eigen::Index n = x.size();
  std::vector<double> samples(x.data(), x.data() + n);
  std::vector<std::complex<double>> spectrum;
  Eigen::FFT<double> fft;
  fft.fwd(spectrum, samples);

  DominantFrequency out;
  double total = 0.0;
  double best = -1.0;
  for (Eigen::Index k = 1; k <= n / 2; ++k) {
    const double power = std::norm(spectrum[static_cast<std::size_t>(k)]);
    total += power;
    if (power > best) {
      best = power;
      out.harmonic = static_cast<int>(k);
    }
  }
  if (!(total > 1e-300)) {
    throw UndefinedFrequency("signal has no oscillating component; frequency is undefined");
  }
  out.purity = best / total;
  return out;
}

}  // namespace crawler
