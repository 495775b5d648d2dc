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

#include <gtest/gtest.h>

#include <string>

namespace qcrit::app {
namespace {

std::string error_of(const std::string& text) {
  try {
    parse_config(text);
  } catch (const ConfigError& e) {
    return e.what();
  }
  return "";
}

TEST(Config, MinimalUsesDefaults) {
  const RunConfig c = parse_config("n_sites: 3\nlambda: 1.0\ntemperature: 0.5\n");
  EXPECT_EQ(c.n_sites, 3);
  EXPECT_EQ(c.lambdas, std::vector<double>{1.0});
  EXPECT_EQ(c.temperatures, std::vector<double>{0.5});
  EXPECT_EQ(c.blocks_p, 5);
  EXPECT_EQ(c.solver.blocks_p, 5);
  EXPECT_DOUBLE_EQ(c.delta_lambda, 1e-3);
  EXPECT_DOUBLE_EQ(c.coupling_j, 1.0);
  EXPECT_FALSE(c.command.has_value());
}

TEST(Config, ModelBlockAndGrids) {
  const RunConfig c = parse_config(
      "command: sweep-crossover\n"
      "model: {n_sites: 3, coupling_j: 1.0, lambda_grid: [0.5, 1.0, 1.5]}\n"
      "temperature_grid: [1.0, 0.5, 0.25]\n"
      "blocks_p: 3\n"
      "seed: 18446744073709551615\n"
      "optimizer: {tolerance: 1.0e-8, max_iterations: 50, restarts: 2}\n");
  EXPECT_EQ(c.command, Command::SweepCrossover);
  EXPECT_EQ(c.lambdas.size(), 3u);
  EXPECT_EQ(c.temperatures.front(), 1.0);
  EXPECT_EQ(c.solver.blocks_p, 3);
  EXPECT_EQ(c.seed, 18446744073709551615ULL);
  EXPECT_EQ(c.solver.max_iterations, 50);
  EXPECT_EQ(c.solver.cold_restarts, 2);
}

TEST(Config, DescendingLambdaGridIsSorted) {
  const RunConfig c = parse_config("n_sites: 3\nlambda_grid: [1.5, 1.0]\ntemperature: 0.5\n");
  EXPECT_EQ(c.lambdas, (std::vector<double>{1.0, 1.5}));
}

TEST(Config, AscendingTemperatureGridRejected) {
  EXPECT_NE(error_of("n_sites: 3\nlambda: 1\ntemperature_grid: [0.1, 0.5, 1.0]\n").find("temperature_grid"),
            std::string::npos);
}

TEST(Config, EmptyFileIsParseError) {
  EXPECT_NE(error_of("").find("empty configuration"), std::string::npos);
  EXPECT_NE(error_of("   \n# only a comment\n").find("empty configuration"), std::string::npos);
}

TEST(Config, UnknownKeysCarryFieldPath) {
  EXPECT_EQ(error_of("n_sites: 3\nlambda: 1\ntemperature: 0.5\noptimizer: {tolerence: 1e-9}\n"),
            "optimizer.tolerence: unknown key");
  EXPECT_EQ(error_of("model: {n_sites: 3, lamda: 1}\ntemperature: 0.5\n"), "model.lamda: unknown key");
  EXPECT_EQ(error_of("n_sites: 3\nlambda: 1\ntemperature: 0.5\nblock_p: 4\n"), "block_p: unknown key");
}

TEST(Config, InvalidValues) {
  EXPECT_NE(error_of("n_sites: 1\nlambda: 1\ntemperature: 0.5\n").find("n_sites"), std::string::npos);
  EXPECT_NE(error_of("n_sites: 3\nlambda: 1\ntemperature: -0.5\n").find("temperature"), std::string::npos);
  EXPECT_NE(error_of("n_sites: 3\nlambda: x\ntemperature: 0.5\n").find("lambda"), std::string::npos);
  EXPECT_NE(error_of("n_sites: 3\ntemperature: 0.5\n").find("lambda"), std::string::npos);
  EXPECT_NE(error_of("n_sites: 3\nlambda: 1\ntemperature: 0.5\ndelta_lambda: 0\n").find("delta_lambda"),
            std::string::npos);
  EXPECT_NE(error_of("n_sites: 3\nlambda: 1\ntemperature: 0.5\ncommand: fly\n").find("command"),
            std::string::npos);
  EXPECT_NE(error_of("n_sites: [3\n").find("parse error"), std::string::npos);
}

}  // namespace
}  // namespace qcrit::app
