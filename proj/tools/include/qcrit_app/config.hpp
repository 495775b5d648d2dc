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

#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "qcrit/gibbs_vqa.hpp"

namespace qcrit::app {

enum class Command { Solve, SweepCrossover, Correlations, Oracle, Verify };

std::optional<Command> parse_command(std::string_view name);
std::string_view command_name(Command command);

/// Bad or inconsistent configuration. The message starts with the field path.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct RunConfig {
  std::optional<Command> command;  // optional in the file; must agree with the CLI
  int n_sites = 0;
  double coupling_j = 1.0;
  std::vector<double> lambdas;       // ascending
  std::vector<double> temperatures;  // strictly descending
  int blocks_p = 5;
  double delta_lambda = 1e-3;
  std::uint64_t seed = 0;
  SolverOptions solver;  // blocks_p mirrored from above
  std::string output = "qcrit_out";
  std::vector<int> spacings;  // empty: default for N
  std::vector<double> times;  // empty: default grid
  int workers = 0;
  bool trace = false;

  std::string source_text;  // file contents, echoed into the manifest
};

/// Parses the YAML document. Unknown keys are rejected; defaults are
/// p = 5, delta_lambda = 0.001, J = 1.
RunConfig parse_config(std::string_view text);
RunConfig load_config(const std::filesystem::path& path);

}  // namespace qcrit::app
