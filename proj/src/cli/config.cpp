#include "crawler/cli/config.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>

#include "crawler/errors.hpp"

namespace crawler::cli {
namespace {

std::string Trim(const std::string& s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

double ParseDouble(const std::string& key, const std::string& text, int line) {
  double value = 0.0;
  const char* end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(text.data(), end, value);
  if (ec != std::errc() || ptr != end || !std::isfinite(value)) {
    throw ConfigError("key '" + key + "' expects a number, got '" + text + "'", line);
  }
  return value;
}

int ParseInt(const std::string& key, const std::string& text, int line) {
  int value = 0;
  const char* end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(text.data(), end, value);
  if (ec != std::errc() || ptr != end) {
    throw ConfigError("key '" + key + "' expects an integer, got '" + text + "'", line);
  }
  return value;
}

bool ParseBool(const std::string& key, const std::string& text, int line) {
  if (text == "true" || text == "1") return true;
  if (text == "false" || text == "0") return false;
  throw ConfigError("key '" + key + "' expects true or false, got '" + text + "'", line);
}

[[noreturn]] void OutOfRange(const std::string& key, const std::string& rule, int line) {
  throw ConfigError("key '" + key + "' out of range: must be " + rule, line);
}

using Setter = std::function<void(RunConfig&, const std::string&, int)>;

template <typename Section>
Setter RealKey(Section RunConfig::*section, double Section::*field, std::string key,
               std::function<bool(double)> ok, std::string rule) {
  return [=](RunConfig& cfg, const std::string& text, int line) {
    const double v = ParseDouble(key, text, line);
    if (!ok(v)) OutOfRange(key, rule, line);
    cfg.*section.*field = v;
  };
}

template <typename Section>
Setter IntKey(Section RunConfig::*section, int Section::*field, std::string key, int min) {
  return [=](RunConfig& cfg, const std::string& text, int line) {
    const int v = ParseInt(key, text, line);
    if (v < min) OutOfRange(key, ">= " + std::to_string(min), line);
    cfg.*section.*field = v;
  };
}

template <typename Section>
Setter BoolKey(Section RunConfig::*section, bool Section::*field, std::string key) {
  return [=](RunConfig& cfg, const std::string& text, int line) {
    cfg.*section.*field = ParseBool(key, text, line);
  };
}

const std::map<std::string, Setter>& Schema() {
  const auto positive = [](double v) { return v > 0.0; };
  const auto non_negative = [](double v) { return v >= 0.0; };
  static const std::map<std::string, Setter> schema = {
      {"model.pi_f", RealKey(&RunConfig::model, &ModelSection::pi_f, "pi_f", non_negative, ">= 0")},
      {"model.pi_sigma",
       RealKey(&RunConfig::model, &ModelSection::pi_sigma, "pi_sigma", non_negative, ">= 0")},
      {"model.zeta", RealKey(&RunConfig::model, &ModelSection::zeta, "zeta", non_negative, ">= 0")},
      {"model.n_f", RealKey(&RunConfig::model, &ModelSection::n_f, "n_f",
                            [](double v) { return v > 1.0 && v < 3.0; }, "in (1, 3)")},
      {"model.eps_f", RealKey(&RunConfig::model, &ModelSection::eps_f, "eps_f", positive, "> 0")},
      {"sim.steps_per_period",
       IntKey(&RunConfig::sim, &SimSection::steps_per_period, "steps_per_period", 16)},
      {"sim.settle_cycles", IntKey(&RunConfig::sim, &SimSection::settle_cycles, "settle_cycles", 10)},
      {"sim.measure_cycles",
       IntKey(&RunConfig::sim, &SimSection::measure_cycles, "measure_cycles", 1)},
      {"sim.amplitude",
       RealKey(&RunConfig::sim, &SimSection::amplitude, "amplitude", non_negative, ">= 0")},
      {"sweep.omega_min",
       RealKey(&RunConfig::sweep, &SweepSection::omega_min, "omega_min", positive, "> 0")},
      {"sweep.omega_max",
       RealKey(&RunConfig::sweep, &SweepSection::omega_max, "omega_max", positive, "> 0")},
      {"sweep.omega_step",
       RealKey(&RunConfig::sweep, &SweepSection::omega_step, "omega_step", positive, "> 0")},
      {"opc.alpha", RealKey(&RunConfig::opc, &OpcSection::alpha, "alpha", positive, "> 0")},
      {"opc.beta", RealKey(&RunConfig::opc, &OpcSection::beta, "beta", positive, "> 0")},
      {"opc.T", RealKey(&RunConfig::opc, &OpcSection::T, "T", positive, "> 0")},
      {"opc.epsilon", RealKey(&RunConfig::opc, &OpcSection::epsilon, "epsilon", positive, "> 0")},
      {"opc.grid_n", IntKey(&RunConfig::opc, &OpcSection::grid_n, "grid_n", 64)},
      {"opc.max_iters", IntKey(&RunConfig::opc, &OpcSection::max_iters, "max_iters", 1)},
      {"opc.tol_grad", RealKey(&RunConfig::opc, &OpcSection::tol_grad, "tol_grad", positive, "> 0")},
      {"opc.tol_cost", RealKey(&RunConfig::opc, &OpcSection::tol_cost, "tol_cost", positive, "> 0")},
      {"opc.backtrack", BoolKey(&RunConfig::opc, &OpcSection::backtrack, "backtrack")},
      {"output.directory",
       [](RunConfig& cfg, const std::string& text, int line) {
         if (text.empty()) throw ConfigError("key 'directory' must not be empty", line);
         cfg.output.directory = text;
       }},
      {"output.emit_svg", BoolKey(&RunConfig::output, &OutputSection::emit_svg, "emit_svg")},
  };
  return schema;
}

std::string Format(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace

DimensionlessGroups RunConfig::groups() const {
  DimensionlessGroups g;
  g.pi_f = model.pi_f;
  g.pi_sigma = model.pi_sigma;
  g.zeta = model.zeta;
  g.friction = FrictionParams::FromAnisotropy(model.n_f, model.eps_f);
  return g;
}

OpcConfig RunConfig::opc_config() const {
  OpcConfig c;
  c.alpha = opc.alpha;
  c.beta = opc.beta;
  c.T = opc.T;
  c.epsilon = opc.epsilon;
  c.grid_n = opc.grid_n;
  c.max_iters = opc.max_iters;
  c.tol_grad = opc.tol_grad;
  c.tol_cost = opc.tol_cost;
  c.backtrack = opc.backtrack;
  c.steps_per_period = sim.steps_per_period;
  return c;
}

SweepOptions RunConfig::sweep_options() const {
  SweepOptions o;
  o.amplitude = sim.amplitude;
  o.settle_cycles = sim.settle_cycles;
  o.measure_cycles = sim.measure_cycles;
  o.steps_per_period = sim.steps_per_period;
  return o;
}

std::vector<double> RunConfig::omega_grid() const {
  std::vector<double> grid;
  const double span = sweep.omega_max - sweep.omega_min;
  const int count = static_cast<int>(std::floor(span / sweep.omega_step + 1e-9)) + 1;
  for (int i = 0; i < count; ++i) grid.push_back(sweep.omega_min + i * sweep.omega_step);
  return grid;
}

RunConfig parse_config_text(const std::string& text) {
  RunConfig cfg;
  std::istringstream in(text);
  std::string raw;
  std::string section;
  std::map<std::string, int> key_lines;
  int line = 0;
  while (std::getline(in, raw)) {
    ++line;
    const auto hash = raw.find('#');
    const std::string content = Trim(hash == std::string::npos ? raw : raw.substr(0, hash));
    if (content.empty()) continue;
    if (content.front() == '[') {
      if (content.back() != ']') throw ConfigError("malformed section header '" + content + "'", line);
      section = Trim(content.substr(1, content.size() - 2));
      if (section != "model" && section != "sim" && section != "sweep" && section != "opc" &&
          section != "output") {
        throw ConfigError("unknown section '" + section + "'", line);
      }
      continue;
    }
    const auto eq = content.find('=');
    if (eq == std::string::npos) throw ConfigError("expected 'key = value', got '" + content + "'", line);
    const std::string key = Trim(content.substr(0, eq));
    const std::string value = Trim(content.substr(eq + 1));
    if (section.empty()) throw ConfigError("key '" + key + "' appears before any section", line);
    const std::string full = section + "." + key;
    const auto it = Schema().find(full);
    if (it == Schema().end()) throw ConfigError("unknown key '" + key + "' in [" + section + "]", line);
    it->second(cfg, value, line);
    key_lines[full] = line;
  }

  auto line_of = [&](const std::string& key) {
    const auto it = key_lines.find(key);
    return it == key_lines.end() ? 0 : it->second;
  };
  if (cfg.sweep.omega_max < cfg.sweep.omega_min) {
    throw ConfigError("key 'omega_max' out of range: must be >= omega_min", line_of("sweep.omega_max"));
  }
  try {
    cfg.groups().Validate();
  } catch (const Error& e) {
    throw ConfigError(std::string("model section: ") + e.what(), line_of("model.n_f"));
  }
  return cfg;
}

RunConfig parse_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read config file '" + path.string() + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config_text(buf.str());
}

std::string serialize_config(const RunConfig& c) {
  std::ostringstream out;
  auto b = [](bool v) { return v ? "true" : "false"; };
  out << "[model]\n"
      << "pi_f = " << Format(c.model.pi_f) << "\n"
      << "pi_sigma = " << Format(c.model.pi_sigma) << "\n"
      << "zeta = " << Format(c.model.zeta) << "\n"
      << "n_f = " << Format(c.model.n_f) << "\n"
      << "eps_f = " << Format(c.model.eps_f) << "\n\n"
      << "[sim]\n"
      << "steps_per_period = " << c.sim.steps_per_period << "\n"
      << "settle_cycles = " << c.sim.settle_cycles << "\n"
      << "measure_cycles = " << c.sim.measure_cycles << "\n"
      << "amplitude = " << Format(c.sim.amplitude) << "\n\n"
      << "[sweep]\n"
      << "omega_min = " << Format(c.sweep.omega_min) << "\n"
      << "omega_max = " << Format(c.sweep.omega_max) << "\n"
      << "omega_step = " << Format(c.sweep.omega_step) << "\n\n"
      << "[opc]\n"
      << "alpha = " << Format(c.opc.alpha) << "\n"
      << "beta = " << Format(c.opc.beta) << "\n"
      << "T = " << Format(c.opc.T) << "\n"
      << "epsilon = " << Format(c.opc.epsilon) << "\n"
      << "grid_n = " << c.opc.grid_n << "\n"
      << "max_iters = " << c.opc.max_iters << "\n"
      << "tol_grad = " << Format(c.opc.tol_grad) << "\n"
      << "tol_cost = " << Format(c.opc.tol_cost) << "\n"
      << "backtrack = " << b(c.opc.backtrack) << "\n\n"
      << "[output]\n"
      << "directory = " << c.output.directory << "\n"
      << "emit_svg = " << b(c.output.emit_svg) << "\n";
  return out.str();
}

}  // namespace crawler::cli
