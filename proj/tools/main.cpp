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

#include <cstdint>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "qcrit/version.hpp"
#include "qcrit_app/config.hpp"
#include "qcrit_app/runner.hpp"

int main(int argc, char** argv) {
  using namespace qcrit::app;

  CLI::App cli{"Variational Gibbs states of the periodic Kitaev ring"};
  cli.set_version_flag("--version", std::string(qcrit::kVersion));
  std::string command;
  std::string config_path;
  std::optional<std::uint64_t> seed;
  std::optional<std::string> out_dir;
  std::optional<std::string> resume;
  std::optional<int> workers;
  bool trace = false;
  cli.add_option("command", command, "solve | sweep-crossover | correlations | oracle | verify")
      ->required()
      ->check(CLI::IsMember({"solve", "sweep-crossover", "correlations", "oracle", "verify"}));
  cli.add_option("--config", config_path, "YAML run configuration")->required();
  cli.add_option("--seed", seed, "64-bit seed (overrides the config)");
  cli.add_option("--out", out_dir, "output directory (overrides the config)");
  cli.add_option("--resume", resume, "checkpoint.json from an earlier run");
  cli.add_option("--workers", workers, "worker threads, 0 = available parallelism")
      ->check(CLI::Range(0, 4096));
  cli.add_flag("--trace", trace, "write per-solve convergence traces");

  try {
    cli.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return cli.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return cli.exit(e);
  } catch (const CLI::ParseError& e) {
    cli.exit(e);
    return kExitUsage;
  }

  try {
    const RunConfig config = load_config(config_path);
    RunOptions options;
    options.command = *parse_command(command);
    if (config.command && *config.command != options.command) {
      throw ConfigError("command: config says '" + std::string(command_name(*config.command)) +
                        "' but '" + command + "' was requested");
    }
    options.config_path = config_path;
    options.out_dir = out_dir.value_or(config.output);
    if (resume) options.resume = *resume;
    options.seed = seed.value_or(config.seed);
    options.workers = workers.value_or(config.workers);
    options.trace = trace || config.trace;

    const RunResult result = run(config, options, std::cerr);
    std::cerr << command << ": " << result.cells << " cells, " << result.failures.size()
              << " failures; outputs in " << options.out_dir.string() << '\n';
    return result.exit_code;
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "runtime error: " << e.what() << '\n';
    return kExitRuntime;
  }
}
