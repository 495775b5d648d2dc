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
#include <ostream>
#include <string>
#include <vector>

#include "qcrit_app/config.hpp"

namespace qcrit::app {

/// Exact-oracle columns are filled up to this size and left empty above it.
inline constexpr int kOracleCap = 8;

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitRuntime = 2;

struct RunOptions {
  Command command = Command::Solve;
  std::filesystem::path config_path;
  std::filesystem::path out_dir;
  std::optional<std::filesystem::path> resume;
  std::uint64_t seed = 0;
  int workers = 0;
  bool trace = false;
};

struct RunResult {
  int exit_code = kExitOk;
  std::size_t cells = 0;
  std::vector<std::string> failures;  // per cell, also in the manifest
  std::vector<std::filesystem::path> outputs;
};

/// Runs one command and writes its CSVs, checkpoint.json and manifest.json
/// into options.out_dir. Throws ConfigError for inputs that contradict the
/// config (bad grids for the command, foreign checkpoints).
RunResult run(const RunConfig& config, const RunOptions& options, std::ostream& log);

struct VerifyCheck {
  std::string name;
  int passed = 0;
  int total = 0;
  double worst = 0.0;      // largest observed error
  double tolerance = 0.0;
};

/// Gradient vs central differences (50 draws), Hadamard test vs direct trace
/// (50 draws) and entropy invariance under the circuit (20 draws), on the
/// configured model at its first (lambda, T).
std::vector<VerifyCheck> run_verify_suite(const RunConfig& config, std::uint64_t seed);

}  // namespace qcrit::app
