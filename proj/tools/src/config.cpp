// Copyright 2026 The qcrit Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "qcrit_app/config.hpp"

#include <yaml-cpp/yaml.h>

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <initializer_list>
#include <sstream>

namespace qcrit::app {
namespace {

constexpr std::pair<std::string_view, Command> kCommands[] = {
    {"solve", Command::Solve},
    {"sweep-crossover", Command::SweepCrossover},
    {"correlations", Command::Correlations},
    {"oracle", Command::Oracle},
    {"verify", Command::Verify},
};

[[noreturn]] void fail(const std::string& path, const std::string& message) {
  throw ConfigError(path + ": " + message);
}

std::string join(const std::string& parent, std::string_view key) {
  return parent.empty() ? std::string(key) : parent + "." + std::string(key);
}

void reject_unknown(const YAML::Node& map, std::initializer_list<std::string_view> allowed,
                    const std::string& path) {
  for (const auto& entry : map) {
    const std::string key = entry.first.as<std::string>();
    if (std::find(allowed.begin(), allowed.end(), key) == allowed.end()) {
      fail(join(path, key), "unknown key");
    }
  }
}

std::string scalar_text(const YAML::Node& node, const std::string& path) {
  if (!node.IsScalar()) fail(path, "expected a scalar");
  return node.Scalar();
}

double real(const YAML::Node& node, const std::string& path) {
  scalar_text(node, path);
  double v = 0.0;
  try {
    v = node.as<double>();
  } catch (const YAML::BadConversion&) {
    fail(path, "expected a number, got '" + node.Scalar() + "'");
  }
  if (!std::isfinite(v)) fail(path, "must be finite");
  return v;
}

long long integer(const YAML::Node& node, const std::string& path) {
  const std::string text = scalar_text(node, path);
  long long v = 0;
  const auto [end, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc() || end != text.data() + text.size()) {
    fail(path, "expected an integer, got '" + text + "'");
  }
  return v;
}

int bounded_int(const YAML::Node& node, const std::string& path, long long lo, long long hi) {
  const long long v = integer(node, path);
  if (v < lo || v > hi) {
    fail(path, "must lie in [" + std::to_string(lo) + ", " + std::to_string(hi) + "], got " +
                   std::to_string(v));
  }
  return static_cast<int>(v);
}

std::uint64_t unsigned64(const YAML::Node& node, const std::string& path) {
  const std::string text = scalar_text(node, path);
  std::uint64_t v = 0;
  const auto [end, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc() || end != text.data() + text.size()) {
    fail(path, "expected an unsigned 64-bit integer, got '" + text + "'");
  }
  return v;
}

bool boolean(const YAML::Node& node, const std::string& path) {
  scalar_text(node, path);
  try {
    return node.as<bool>();
  } catch (const YAML::BadConversion&) {
    fail(path, "expected true or false, got '" + node.Scalar() + "'");
  }
}

std::vector<double> real_list(const YAML::Node& node, const std::string& path) {
  if (!node.IsSequence()) fail(path, "expected a list");
  if (node.size() == 0) fail(path, "must not be empty");
  std::vector<double> out;
  for (std::size_t i = 0; i < node.size(); ++i) {
    out.push_back(real(node[i], path + "[" + std::to_string(i) + "]"));
  }
  return out;
}

bool strictly_ascending(const std::vector<double>& v) {
  return std::adjacent_find(v.begin(), v.end(), std::greater_equal<>()) == v.end();
}

bool strictly_descending(const std::vector<double>& v) {
  return std::adjacent_find(v.begin(), v.end(), std::less_equal<>()) == v.end();
}

// Model keys may sit in a `model` block or at the top level, not both.
void read_model(const YAML::Node& node, const std::string& path, RunConfig& cfg, bool& have_lambda) {
  if (const YAML::Node v = node["n_sites"]) cfg.n_sites = bounded_int(v, join(path, "n_sites"), 2, 62);
  if (const YAML::Node v = node["coupling_j"]) cfg.coupling_j = real(v, join(path, "coupling_j"));
  const YAML::Node single = node["lambda"];
  const YAML::Node grid = node["lambda_grid"];
  if (single && grid) fail(join(path, "lambda_grid"), "give either lambda or lambda_grid, not both");
  if (single) {
    cfg.lambdas = {real(single, join(path, "lambda"))};
    have_lambda = true;
  }
  if (grid) {
    std::vector<double> values = real_list(grid, join(path, "lambda_grid"));
    if (strictly_descending(values)) std::reverse(values.begin(), values.end());
    if (!strictly_ascending(values)) fail(join(path, "lambda_grid"), "must be strictly monotone");
    cfg.lambdas = std::move(values);
    have_lambda = true;
  }
}

}  // namespace

std::optional<Command> parse_command(std::string_view name) {
  for (const auto& [text, command] : kCommands) {
    if (text == name) return command;
  }
  return std::nullopt;
}

std::string_view command_name(Command command) {
  for (const auto& [text, c] : kCommands) {
    if (c == command) return text;
  }
  return "unknown";
}

RunConfig parse_config(std::string_view text) {
  YAML::Node root;
  try {
    root = YAML::Load(std::string(text));
  } catch (const YAML::ParserException& e) {
    throw ConfigError("<root>: parse error at line " + std::to_string(e.mark.line + 1) + ": " + e.msg);
  }
  if (!root || root.IsNull()) fail("<root>", "empty configuration");
  if (!root.IsMap()) fail("<root>", "expected a mapping of keys to values");

  reject_unknown(root,
                 {"command", "model", "n_sites", "coupling_j", "lambda", "lambda_grid", "temperature",
                  "temperature_grid", "blocks_p", "delta_lambda", "seed", "optimizer", "output",
                  "correlations", "workers", "trace"},
                 "");

  RunConfig cfg;
  cfg.source_text = std::string(text);

  if (const YAML::Node v = root["command"]) {
    const std::string name = scalar_text(v, "command");
    cfg.command = parse_command(name);
    if (!cfg.command) fail("command", "unknown command '" + name + "'");
  }

  bool have_lambda = false;
  if (const YAML::Node model = root["model"]) {
    if (!model.IsMap()) fail("model", "expected a mapping");
    reject_unknown(model, {"n_sites", "coupling_j", "lambda", "lambda_grid"}, "model");
    for (const char* key : {"n_sites", "coupling_j", "lambda", "lambda_grid"}) {
      if (root[key]) fail(key, "already given in the model block");
    }
    read_model(model, "model", cfg, have_lambda);
  } else {
    read_model(root, "", cfg, have_lambda);
  }
  const std::string model_prefix = root["model"] ? "model." : "";
  if (cfg.n_sites == 0) fail(model_prefix + "n_sites", "required");
  if (!have_lambda) fail(model_prefix + "lambda", "required (lambda or lambda_grid)");

  const YAML::Node t_single = root["temperature"];
  const YAML::Node t_grid = root["temperature_grid"];
  if (t_single && t_grid) fail("temperature_grid", "give either temperature or temperature_grid, not both");
  if (t_single) {
    cfg.temperatures = {real(t_single, "temperature")};
  } else if (t_grid) {
    cfg.temperatures = real_list(t_grid, "temperature_grid");
    if (!strictly_descending(cfg.temperatures)) {
      fail("temperature_grid", "must be strictly descending (annealing runs from hot to cold)");
    }
  } else {
    fail("temperature", "required (temperature or temperature_grid)");
  }
  for (std::size_t i = 0; i < cfg.temperatures.size(); ++i) {
    if (!(cfg.temperatures[i] > 0.0)) {
      fail(t_grid ? "temperature_grid[" + std::to_string(i) + "]" : "temperature", "must be > 0");
    }
  }

  if (const YAML::Node v = root["blocks_p"]) cfg.blocks_p = bounded_int(v, "blocks_p", 1, 1000);
  if (const YAML::Node v = root["delta_lambda"]) {
    cfg.delta_lambda = real(v, "delta_lambda");
    if (!(cfg.delta_lambda > 0.0)) fail("delta_lambda", "must be > 0");
  }
  if (const YAML::Node v = root["seed"]) cfg.seed = unsigned64(v, "seed");
  if (const YAML::Node v = root["output"]) cfg.output = scalar_text(v, "output");
  if (const YAML::Node v = root["workers"]) cfg.workers = bounded_int(v, "workers", 0, 4096);
  if (const YAML::Node v = root["trace"]) cfg.trace = boolean(v, "trace");

  if (const YAML::Node opt = root["optimizer"]) {
    if (!opt.IsMap()) fail("optimizer", "expected a mapping");
    reject_unknown(opt, {"tolerance", "max_iterations", "restarts", "warm_restarts"}, "optimizer");
    if (const YAML::Node v = opt["tolerance"]) {
      cfg.solver.gradient_tolerance = real(v, "optimizer.tolerance");
      if (!(cfg.solver.gradient_tolerance > 0.0)) fail("optimizer.tolerance", "must be > 0");
    }
    if (const YAML::Node v = opt["max_iterations"]) {
      cfg.solver.max_iterations = bounded_int(v, "optimizer.max_iterations", 0, 100000000);
    }
    if (const YAML::Node v = opt["restarts"]) {
      cfg.solver.cold_restarts = bounded_int(v, "optimizer.restarts", 1, 1000);
    }
    if (const YAML::Node v = opt["warm_restarts"]) {
      cfg.solver.warm_restarts = bounded_int(v, "optimizer.warm_restarts", 1, 1000);
    }
  }

  if (const YAML::Node corr = root["correlations"]) {
    if (!corr.IsMap()) fail("correlations", "expected a mapping");
    reject_unknown(corr, {"spacings", "times"}, "correlations");
    if (const YAML::Node v = corr["spacings"]) {
      if (!v.IsSequence() || v.size() == 0) fail("correlations.spacings", "expected a non-empty list");
      for (std::size_t i = 0; i < v.size(); ++i) {
        cfg.spacings.push_back(bounded_int(v[i], "correlations.spacings[" + std::to_string(i) + "]", 0,
                                           cfg.n_sites - 1));
      }
    }
    if (const YAML::Node v = corr["times"]) {
      cfg.times = real_list(v, "correlations.times");
      if (!(cfg.times.front() > 0.0) || !strictly_ascending(cfg.times)) {
        fail("correlations.times", "must be strictly ascending from a positive start");
      }
    }
  }

  cfg.solver.blocks_p = cfg.blocks_p;
  cfg.solver.record_trace = cfg.trace;
  return cfg;
}

RunConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("<file>: cannot open " + path.string());
  std::ostringstream text;
  text << in.rdbuf();
  return parse_config(text.str());
}

}  // namespace qcrit::app
