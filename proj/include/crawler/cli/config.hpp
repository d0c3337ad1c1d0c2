#pragma once

#include <filesystem>
#include <numbers>
#include <stdexcept>
#include <string>

#include "crawler/model.hpp"
#include "crawler/opc.hpp"
#include "crawler/sim.hpp"

namespace crawler::cli {

// Raised for anything wrong with the configuration or the command line.
class ConfigError : public std::runtime_error {
 public:
  ConfigError(const std::string& what, int line = 0)
      : std::runtime_error(line > 0 ? "line " + std::to_string(line) + ": " + what : what),
        line_(line) {}
  int line() const { return line_; }

 private:
  int line_;
};

struct ModelSection {
  double pi_f = 1.0;
  double pi_sigma = 1.0;
  double zeta = 0.2236;
  double n_f = 1.2;
  double eps_f = 0.05;
  bool operator==(const ModelSection&) const = default;
};

struct SimSection {
  int steps_per_period = 1024;
  int settle_cycles = 30;
  int measure_cycles = 10;
  double amplitude = 1.0;
  bool operator==(const SimSection&) const = default;
};

struct SweepSection {
  double omega_min = 0.3;
  double omega_max = 2.0;
  double omega_step = 0.05;
  bool operator==(const SweepSection&) const = default;
};

struct OpcSection {
  double alpha = 3.3;
  double beta = 0.05;
  double T = 2.0 * std::numbers::pi;
  double epsilon = 0.01;
  int grid_n = 300;
  int max_iters = 20000;
  double tol_grad = 1e-4;
  double tol_cost = 1e-8;
  bool backtrack = false;
  bool operator==(const OpcSection&) const = default;
};

struct OutputSection {
  std::string directory = "out";
  bool emit_svg = false;
  bool operator==(const OutputSection&) const = default;
};

struct RunConfig {
  ModelSection model;
  SimSection sim;
  SweepSection sweep;
  OpcSection opc;
  OutputSection output;
  bool operator==(const RunConfig&) const = default;

  DimensionlessGroups groups() const;
  OpcConfig opc_config() const;
  SweepOptions sweep_options() const;
  std::vector<double> omega_grid() const;
};

// Sectioned key = value text. '#' starts a comment; blank lines are ignored.
RunConfig parse_config_text(const std::string& text);
RunConfig parse_config(const std::filesystem::path& path);

std::string serialize_config(const RunConfig& cfg);

}  // namespace crawler::cli
