#include "crawler/cli/commands.hpp"

#include <cmath>
#include <iomanip>
#include <numbers>
#include <optional>
#include <ostream>

#include <CLI11.hpp>

#include "crawler/cli/config.hpp"
#include "crawler/cli/output.hpp"
#include "crawler/dfhb.hpp"
#include "crawler/errors.hpp"
#include "crawler/opc.hpp"
#include "crawler/pbvp.hpp"
#include "crawler/sim.hpp"

namespace crawler::cli {
namespace {

struct Overrides {
  std::string config;
  std::optional<double> omega;
  std::optional<int> cycles;
  std::optional<std::string> out;
  bool svg = false;
};

// Head and tail positions x1 = (z2 + z1) / 2, x2 = (z2 - z1) / 2.
std::pair<Eigen::VectorXd, Eigen::VectorXd> HeadTail(const Trajectory& traj) {
  const Eigen::VectorXd z1 = traj.z.row(0).transpose();
  const Eigen::VectorXd z2 = traj.z.row(1).transpose();
  return {0.5 * (z2 + z1), 0.5 * (z2 - z1)};
}

CsvTable TrajectoryTable(const Trajectory& traj) {
  CsvTable t;
  t.header = {"t", "z1", "z2", "z3", "z4", "f", "power"};
  t.columns.push_back(traj.t);
  for (int i = 0; i < 4; ++i) t.columns.push_back(traj.z.row(i).transpose());
  t.columns.push_back(traj.f);
  t.columns.push_back(actuation_power(traj));
  return t;
}

std::string HeadTailSvg(const Trajectory& traj, const std::string& title) {
  const auto [head, tail] = HeadTail(traj);
  return RenderLineChart(title, "t", traj.t,
                         {{"head x1", head, "#1f77b4"}, {"tail x2", tail, "#d62728"}});
}

int Simulate(const RunConfig& cfg, const Overrides& o, OutputSet& files, std::ostream& out) {
  const double omega = o.omega.value_or(1.0);
  if (!(omega > 0.0)) throw ConfigError("--omega must be positive");
  const int cycles = o.cycles.value_or(cfg.sim.settle_cycles + cfg.sim.measure_cycles);
  if (cycles < 1) throw ConfigError("--cycles must be positive");
  const DimensionlessGroups g = cfg.groups();
  const ForcingSignal sig = ForcingSignal::Sinusoidal(cfg.sim.amplitude, omega);
  const double period = 2.0 * std::numbers::pi / omega;
  const Trajectory traj = integrate(StateVector::Zero(), sig, g, period * cycles,
                                    cfg.sim.steps_per_period * cycles);
  files.Write("trajectory.csv", TrajectoryTable(traj).Render());
  if (o.svg || cfg.output.emit_svg) {
    files.Write("trajectory.svg", HeadTailSvg(traj, "Head and tail positions"));
  }
  const TrajectoryMetrics m = metrics(traj, g);
  out << std::setprecision(12) << "omega = " << omega << "\ncycles = " << cycles
      << "\navg_com_speed = " << m.avg_com_speed << "\nstrain_amplitude = " << m.strain_amplitude
      << "\n";
  return kExitOk;
}

int Sweep(const RunConfig& cfg, const Overrides& o, OutputSet& files, std::ostream& out) {
  const DimensionlessGroups g = cfg.groups();
  std::vector<double> grid = cfg.omega_grid();
  if (o.omega) grid = {*o.omega};
  SweepOptions opts = cfg.sweep_options();
  if (o.cycles) opts.measure_cycles = *o.cycles;
  const auto sim = frequency_sweep(g, grid, opts);
  const auto hb = hb_speed_curve(g, g.friction.delta, grid);

  const Eigen::Index n = static_cast<Eigen::Index>(grid.size());
  Eigen::VectorXd w(n), v_sim(n), v_hb(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    w(i) = grid[static_cast<std::size_t>(i)];
    v_sim(i) = sim[static_cast<std::size_t>(i)].avg_com_speed;
    v_hb(i) = hb[static_cast<std::size_t>(i)].v_com.value_or(std::nan(""));
  }
  files.Write("sweep.csv", CsvTable{{"omega", "v_sim", "v_hb"}, {w, v_sim, v_hb}}.Render());
  if (o.svg || cfg.output.emit_svg) {
    files.Write("sweep.svg",
                RenderLineChart("Average CoM speed", "omega", w,
                                {{"simulation", v_sim, "#1f77b4"},
                                 {"harmonic balance", v_hb, "#ff7f0e"}}));
  }
  Eigen::Index best = 0;
  v_sim.maxCoeff(&best);
  out << std::setprecision(12) << "argmax omega (simulation) = " << w(best)
      << "\nmax v_sim = " << v_sim(best) << "\n";
  return kExitOk;
}

int Hb(const RunConfig& cfg, const Overrides& o, std::ostream& out) {
  const DimensionlessGroups g = cfg.groups();
  const double delta = g.friction.delta;
  const double omega = o.omega.value_or(1.0);
  out << std::setprecision(12);
  const HbSolution s = hb_solve(g, delta, omega);
  out << "omega = " << s.omega << "\nA = " << s.A << "\nphi = " << s.phi << "\na = " << s.a
      << "\nv_bar = " << s.v_bar << "\nv_tilde = " << s.v_tilde << "\ntheta1 = " << s.theta1
      << "\ntheta2 = " << s.theta2 << "\n";
  const double v_star = optimal_speed(g, delta);
  out << "v_star = " << v_star << (v_star <= 0.0 ? "  (friction dominates: no crawling)" : "")
      << "\n";
  out << "\nomega,v_hb\n";
  for (const auto& p : hb_speed_curve(g, delta, cfg.omega_grid())) {
    out << p.omega << ',';
    if (p.v_com) {
      out << *p.v_com;
    } else {
      out << "no-crawl";
    }
    out << '\n';
  }
  return kExitOk;
}

int Opc(const RunConfig& cfg, const Overrides& o, OutputSet& files, std::ostream& out) {
  const DimensionlessGroups g = cfg.groups();
  OpcConfig oc = cfg.opc_config();
  if (o.cycles) oc.max_iters = *o.cycles;
  const double omega = o.omega.value_or(1.0);
  const ForcingSignal f0 = ForcingSignal::Sinusoidal(1.0, omega);
  const OpcResult r = hill_climb(g, oc, f0);

  const Eigen::Index iters = static_cast<Eigen::Index>(r.progress.size());
  Eigen::VectorXd it(iters), J(iters), grad(iters), res(iters);
  for (Eigen::Index i = 0; i < iters; ++i) {
    const auto& p = r.progress[static_cast<std::size_t>(i)];
    it(i) = p.iter;
    J(i) = p.J;
    grad(i) = p.grad_norm;
    res(i) = p.residual;
  }
  files.Write("opc_progress.csv",
              CsvTable{{"iter", "J", "grad_norm", "residual"}, {it, J, grad, res}}.Render());

  const Trajectory& traj = r.state.trajectory;
  Eigen::VectorXd f_init(traj.t.size());
  for (Eigen::Index i = 0; i < traj.t.size(); ++i) f_init(i) = f0(traj.t(i));
  files.Write("opc_forcing.csv", CsvTable{{"t", "f0", "f"}, {traj.t, f_init, traj.f}}.Render());
  files.Write("opc_trajectory.csv", TrajectoryTable(traj).Render());
  CsvTable costate{{"t", "lambda1", "lambda2", "lambda3", "lambda4"}, {r.costate.t}};
  for (int i = 0; i < 4; ++i) costate.columns.push_back(r.costate.lambda.row(i).transpose());
  files.Write("opc_costate.csv", costate.Render());

  if (o.svg || cfg.output.emit_svg) {
    files.Write("opc_forcing.svg",
                RenderLineChart("Actuation force", "t", traj.t,
                                {{"f0", f_init, "#7f7f7f"}, {"f*", traj.f, "#1f77b4"}}));
    files.Write("opc_trajectory.svg", HeadTailSvg(traj, "Optimal gait: head and tail"));
    const char* colors[4] = {"#1f77b4", "#ff7f0e", "#2ca02c", "#d62728"};
    std::vector<Series> lambdas;
    for (int i = 0; i < 4; ++i) {
      lambdas.push_back({"lambda" + std::to_string(i + 1), r.costate.lambda.row(i).transpose(),
                         colors[i]});
    }
    files.Write("opc_costate.svg", RenderLineChart("Co-states", "t", r.costate.t, lambdas));
  }

  const DominantFrequency dom = dominant_frequency(r.forcing);
  const double best = *std::max_element(r.cost_history.begin(), r.cost_history.end());
  out << std::setprecision(12) << "initial J = " << r.cost_history.front() << "\nbest J = " << best
      << "\niterations = " << r.iterations << "\nconverged = " << (r.converged ? "yes" : "no")
      << "\ndominant harmonic = " << dom.harmonic << " (purity " << dom.purity << ")\n";
  return kExitOk;
}

}  // namespace

int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Two-segment soft crawler: simulation, harmonic balance and gait optimization",
               "crawl-opc"};
  app.require_subcommand(1);
  Overrides o;
  double omega = 0.0;
  int cycles = 0;
  std::string out_dir;
  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--config", o.config, "config file, or 'default'")->required();
    sub->add_option("--omega", omega, "forcing frequency");
    sub->add_option("--cycles", cycles,
                    "simulate: periods; sweep: measured periods; opc: iteration cap");
    sub->add_option("--out", out_dir, "output directory");
    sub->add_flag("--svg", o.svg, "also write SVG plots");
  };
  CLI::App* simulate = app.add_subcommand("simulate", "integrate from rest under sinusoidal forcing");
  CLI::App* sweep = app.add_subcommand("sweep", "steady-state CoM speed versus forcing frequency");
  CLI::App* hb = app.add_subcommand("hb", "harmonic-balance prediction");
  CLI::App* opc = app.add_subcommand("opc", "optimal periodic gait by hill climbing");
  for (CLI::App* sub : {simulate, sweep, hb, opc}) add_common(sub);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kExitConfig;
  }
  CLI::App* active = app.get_subcommands().front();
  if (active->count("--omega")) o.omega = omega;
  if (active->count("--cycles")) o.cycles = cycles;
  if (active->count("--out")) o.out = out_dir;

  std::optional<OutputSet> files;
  try {
    const RunConfig cfg = o.config == "default" ? RunConfig{} : parse_config(o.config);
    (void)cfg.groups();
    const std::filesystem::path dir = o.out.value_or(cfg.output.directory);
    int code = kExitOk;
    if (active == hb) {
      code = Hb(cfg, o, out);
    } else {
      files.emplace(dir);
      if (active == simulate) code = Simulate(cfg, o, *files, out);
      if (active == sweep) code = Sweep(cfg, o, *files, out);
      if (active == opc) code = Opc(cfg, o, *files, out);
      files->Keep();
      for (const auto& f : files->files()) out << "wrote " << f.string() << "\n";
    }
    return code;
  } catch (const ConfigError& e) {
    err << "configuration error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const InvalidParameter& e) {
    err << "configuration error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const Error& e) {
    err << "solver error: " << e.what() << "\n";
    return kExitSolver;
  } catch (const std::exception& e) {
    err << "solver error: " << e.what() << "\n";
    return kExitSolver;
  }
}

}  // namespace crawler::cli
