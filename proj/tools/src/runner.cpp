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

#include "qcrit_app/runner.hpp"

#include <Eigen/Core>
#include <chrono>
#include <cmath>
#include <fstream>
#include <string>

#include "json.hpp"
#include "qcrit/exact_oracle.hpp"
#include "qcrit/observables.hpp"
#include "qcrit/parallel.hpp"
#include "qcrit/version.hpp"
#include "qcrit_app/checkpoint.hpp"
#include "qcrit_app/csv.hpp"

namespace qcrit::app {
namespace {

using nlohmann::json;

std::vector<std::string> with_provenance(std::vector<std::string> columns) {
  for (const char* c : {"n_sites", "blocks_p", "seed"}) columns.emplace_back(c);
  return columns;
}

std::string cell_label(double lambda, double temperature) {
  return "lambda=" + format_real(lambda) + " T=" + format_real(temperature);
}

class Session {
 public:
  Session(const RunConfig& config, const RunOptions& options, std::ostream& log)
      : cfg_(config),
        opt_(options),
        log_(log),
        base_{config.n_sites, config.coupling_j, 0.0},
        checkpoint_(config.n_sites, config.coupling_j, config.blocks_p) {
    solver_ = cfg_.solver;
    solver_.blocks_p = cfg_.blocks_p;
    solver_.record_trace = opt_.trace;
    oracle_ = cfg_.n_sites <= kOracleCap;
    provenance_ = {std::to_string(cfg_.n_sites), std::to_string(cfg_.blocks_p),
                   std::to_string(opt_.seed)};
  }

  RunResult execute() {
    base_.validate();
    std::filesystem::create_directories(opt_.out_dir);
    if (opt_.resume) load_resume();
    switch (opt_.command) {
      case Command::Solve: run_solve(); break;
      case Command::SweepCrossover: run_sweep(); break;
      case Command::Correlations: run_correlations(); break;
      case Command::Oracle: run_oracle(); break;
      case Command::Verify: run_verify(); break;
    }
    return result_;
  }

  void write_manifest(double wall_seconds) {
    json doc;
    doc["tool"] = "qcrit";
    doc["command"] = std::string(command_name(opt_.command));
    doc["seed"] = opt_.seed;
    doc["workers"] = resolve_workers(opt_.workers);
    doc["config_path"] = opt_.config_path.string();
    doc["config_text"] = cfg_.source_text;
    doc["config"] = {
        {"n_sites", cfg_.n_sites},
        {"coupling_j", cfg_.coupling_j},
        {"lambda_grid", cfg_.lambdas},
        {"temperature_grid", cfg_.temperatures},
        {"blocks_p", cfg_.blocks_p},
        {"delta_lambda", cfg_.delta_lambda},
        {"optimizer",
         {{"tolerance", solver_.gradient_tolerance},
          {"max_iterations", solver_.max_iterations},
          {"restarts", solver_.cold_restarts},
          {"warm_restarts", solver_.warm_restarts}}},
        {"spacings", cfg_.spacings},
        {"times", cfg_.times},
        {"trace", opt_.trace},
    };
    doc["resume"] = opt_.resume ? json(opt_.resume->string()) : json(nullptr);
    doc["versions"] = {
        {"qcrit", std::string(kVersion)},
        {"checkpoint_format", kCheckpointFormatVersion},
        {"eigen", std::to_string(EIGEN_WORLD_VERSION) + "." + std::to_string(EIGEN_MAJOR_VERSION) + "." +
                      std::to_string(EIGEN_MINOR_VERSION)},
        {"compiler", __VERSION__},
    };
    doc["wall_time_seconds"] = wall_seconds;
    doc["cells"] = result_.cells;
    doc["failures"] = result_.failures;
    doc["exit_code"] = result_.exit_code;
    std::vector<std::string> outputs;
    for (const auto& p : result_.outputs) outputs.push_back(p.filename().string());
    doc["outputs"] = outputs;
    std::ofstream out(opt_.out_dir / "manifest.json", std::ios::binary | std::ios::trunc);
    out << doc.dump(2) << '\n';
  }

  RunResult& result() { return result_; }

 private:
  void load_resume() {
    Checkpoint loaded = Checkpoint::load(*opt_.resume);
    if (loaded.fingerprint() != checkpoint_.fingerprint()) {
      throw ConfigError("resume: checkpoint fingerprint " + loaded.fingerprint() +
                        " does not match this configuration (" + checkpoint_.fingerprint() +
                        " for N, J, p)");
    }
    resumed_ = std::move(loaded);
    log_ << "resuming from " << opt_.resume->string() << " (" << resumed_->size() << " cells)\n";
    lookup_ = [this](double lambda, double temperature) {
      return resumed_->find(lambda, temperature);
    };
  }

  std::vector<std::string> row(std::vector<std::string> fields) const {
    fields.insert(fields.end(), provenance_.begin(), provenance_.end());
    return fields;
  }

  CsvWriter open(const std::string& name, std::vector<std::string> columns) {
    result_.outputs.push_back(opt_.out_dir / name);
    return CsvWriter(opt_.out_dir / name, with_provenance(std::move(columns)));
  }

  void note_failure(std::string message) {
    log_ << "cell failure: " << message << '\n';
    result_.failures.push_back(std::move(message));
  }

  void save_checkpoint() {
    if (resumed_) {
      for (const auto& [key, s] : resumed_->cells()) {
        if (!checkpoint_.find(key.first, key.second)) checkpoint_.put(s);
      }
    }
    checkpoint_.save(opt_.out_dir / "checkpoint.json");
    result_.outputs.push_back(opt_.out_dir / "checkpoint.json");
  }

  // Lambda ascending, T ascending: solutions arrive in descending-T order.
  static std::vector<std::string> free_energy_columns() {
    return {"lambda", "temperature", "F_var", "F_exact", "E", "S", "grad_norm", "converged"};
  }

  void free_energy_row(CsvWriter& csv, const ThermalSolution& s) {
    std::optional<double> exact;
    if (oracle_) exact = exact_free_energy(s.model, s.temperature);
    csv.row(row({format_real(s.model.field_lambda), format_real(s.temperature),
                 format_real(s.free_energy), format_real(exact), format_real(s.energy),
                 format_real(s.entropy), format_real(s.grad_norm), s.converged ? "1" : "0"}));
  }

  void account(const ThermalSolution& s) {
    ++result_.cells;
    if (!s.converged) {
      note_failure(cell_label(s.model.field_lambda, s.temperature) + ": not converged (" +
                   s.stop_reason + ", grad_norm " + format_real(s.grad_norm) + ")");
    }
  }

  void trace_rows(std::optional<CsvWriter>& csv, const ThermalSolution& s) {
    if (!csv) return;
    for (const MinimizerTraceEntry& e : s.trace) {
      csv->row(row({format_real(s.model.field_lambda), format_real(s.temperature),
                    std::to_string(e.iteration), format_real(e.value), format_real(e.gradient_norm)}));
    }
  }

  std::optional<CsvWriter> open_traces() {
    if (!opt_.trace) return std::nullopt;
    return open("traces.csv", {"lambda", "temperature", "iteration", "F", "grad_norm"});
  }

  void finish_cells(std::size_t converged) {
    if (result_.cells > 0 && converged == 0) result_.exit_code = kExitRuntime;
  }

  void run_solve() {
    const std::size_t L = cfg_.lambdas.size();
    std::vector<std::vector<ThermalSolution>> chains(L);
    std::vector<std::string> errors(L);
    parallel_for(L, opt_.workers, [&](std::size_t li) {
      const double lambda = cfg_.lambdas[li];
      try {
        chains[li] = anneal_schedule(base_.with_lambda(lambda), cfg_.temperatures,
                                     chain_seed(opt_.seed, lambda), solver_, lookup_);
      } catch (const std::exception& e) {
        errors[li] = e.what();
      }
    });

    CsvWriter fe = open("free_energy.csv", free_energy_columns());
    std::optional<CsvWriter> traces = open_traces();
    std::size_t converged = 0;
    for (std::size_t li = 0; li < L; ++li) {
      if (!errors[li].empty()) {
        result_.cells += cfg_.temperatures.size();
        note_failure("lambda=" + format_real(cfg_.lambdas[li]) + ": " + errors[li]);
        continue;
      }
      for (auto it = chains[li].rbegin(); it != chains[li].rend(); ++it) {
        free_energy_row(fe, *it);
        trace_rows(traces, *it);
        account(*it);
        converged += it->converged ? 1 : 0;
        checkpoint_.put(*it);
      }
    }
    save_checkpoint();
    finish_cells(converged);
  }

  void require_crossover_grid() const {
    if (cfg_.temperatures.front() > cfg_.coupling_j * (1.0 + 1e-12)) {
      throw ConfigError("temperature_grid: crossover temperatures must lie in (0, J]");
    }
  }

  void run_sweep() {
    require_crossover_grid();
    ScanOptions scan;
    scan.solver = solver_;
    scan.delta_lambda = cfg_.delta_lambda;
    scan.seed = opt_.seed;
    scan.workers = opt_.workers;
    scan.lookup = lookup_;
    const std::vector<CrossoverRecord> records =
        crossover_scan(base_, cfg_.lambdas, cfg_.temperatures, scan);
    std::vector<CrossoverPoint> exact;
    if (oracle_) exact = exact_crossover(base_, cfg_.lambdas, cfg_.temperatures, cfg_.delta_lambda);

    CsvWriter fe = open("free_energy.csv", free_energy_columns());
    CsvWriter chi = open("susceptibility.csv", {"lambda", "temperature", "chi_var", "chi_exact",
                                                "second_difference_var", "second_difference_exact"});
    CsvWriter cross = open("crossover.csv", {"lambda", "T_star_var", "T_star_exact", "boundary_flag",
                                             "T_star_grid_var", "T_star_grid_exact",
                                             "boundary_flag_exact"});
    std::optional<CsvWriter> traces = open_traces();
    std::size_t converged = 0;
    for (std::size_t li = 0; li < records.size(); ++li) {
      const CrossoverRecord& rec = records[li];
      const std::size_t nt = rec.cells.size();
      for (std::size_t k = nt; k-- > 0;) {
        const SusceptibilityCell& cell = rec.cells[k];
        free_energy_row(fe, cell.center);
        trace_rows(traces, cell.center);
        std::optional<double> chi_exact;
        std::optional<double> d2_exact;
        if (oracle_) {
          chi_exact = exact[li].chi[k].chi;
          d2_exact = exact[li].chi[k].second_difference;
        }
        chi.row(row({format_real(rec.lambda), format_real(cell.temperature),
                     format_real(cell.chi ? std::optional(cell.chi->chi) : std::nullopt),
                     format_real(chi_exact),
                     format_real(cell.chi ? std::optional(cell.chi->second_difference) : std::nullopt),
                     format_real(d2_exact)}));
        for (const ThermalSolution* s : {&cell.minus, &cell.center, &cell.plus}) {
          checkpoint_.put(*s);
          account(*s);
        }
        if (cell.chi) ++converged;
        if (!cell.error.empty()) note_failure(cell_label(rec.lambda, cell.temperature) + ": " + cell.error);
      }
      if (!rec.error.empty()) note_failure("lambda=" + format_real(rec.lambda) + ": " + rec.error);
      cross.row(row({format_real(rec.lambda), format_real(rec.t_star),
                     format_real(oracle_ ? std::optional(exact[li].t_star) : std::nullopt),
                     rec.error.empty() ? (rec.boundary ? "1" : "0") : "",
                     format_real(rec.t_star_grid),
                     format_real(oracle_ ? std::optional(exact[li].t_star_grid) : std::nullopt),
                     oracle_ ? (exact[li].boundary ? "1" : "0") : ""}));
    }
    save_checkpoint();
    finish_cells(converged);
  }

  void correlation_rows(CsvWriter& csv, const ScalingCell& cell, const std::string& suffix) {
    const std::string lam = format_real(cell.lambda);
    const std::string temp = format_real(cell.temperature);
    for (std::size_t k = 0; k < cell.static_values.size(); ++k) {
      csv.row(row({lam, temp, "R" + suffix, std::to_string(cell.spacings[k]),
                   format_real(cell.static_values[k])}));
    }
    for (std::size_t k = 0; k < cell.dynamic_values.size(); ++k) {
      csv.row(row({lam, temp, "C" + suffix, format_real(cell.times[k]),
                   format_real(cell.dynamic_values[k])}));
    }
  }

  static std::optional<double> scale(const std::optional<CorrelationFit>& fit) {
    return fit ? std::optional(fit->length_scale) : std::nullopt;
  }
  static std::optional<double> residual(const std::optional<CorrelationFit>& fit) {
    return fit ? std::optional(fit->residual) : std::nullopt;
  }

  void run_correlations() {
    StudyOptions study;
    study.solver = solver_;
    study.seed = opt_.seed;
    study.spacings = cfg_.spacings;
    study.times = cfg_.times;
    study.workers = opt_.workers;
    study.lookup = lookup_;
    const std::vector<ScalingCell> cells = scaling_study(base_, cfg_.lambdas, cfg_.temperatures, study);

    // The exact rows go through the same measurement and fitting path.
    std::vector<ScalingCell> exact(oracle_ ? cells.size() : 0);
    parallel_for(exact.size(), opt_.workers, [&](std::size_t k) {
      const ModelParams model = base_.with_lambda(cells[k].lambda);
      const ExactGibbs gibbs = exact_gibbs(model, cells[k].temperature);
      exact[k].lambda = cells[k].lambda;
      exact[k].temperature = cells[k].temperature;
      exact[k].spacings = cells[k].spacings;
      exact[k].times = cells[k].times;
      measure_correlations(exact[k], gibbs.density_matrix(), Propagator(gibbs.spectral));
    });

    CsvWriter fe = open("free_energy.csv", free_energy_columns());
    CsvWriter corr = open("correlations.csv", {"lambda", "temperature", "kind", "abscissa", "value"});
    CsvWriter fits = open("fits.csv", {"lambda", "temperature", "xi", "tau", "residual_xi",
                                       "residual_tau", "window", "xi_exact", "tau_exact",
                                       "residual_xi_exact", "residual_tau_exact", "window_exact"});
    std::optional<CsvWriter> traces = open_traces();

    // scaling_study orders cells lambda-major, temperatures descending.
    const std::size_t nt = cfg_.temperatures.size();
    std::size_t converged = 0;
    for (std::size_t li = 0; li < cfg_.lambdas.size(); ++li) {
      for (std::size_t ti = nt; ti-- > 0;) {
        const std::size_t k = li * nt + ti;
        const ScalingCell& cell = cells[k];
        free_energy_row(fe, cell.solution);
        trace_rows(traces, cell.solution);
        account(cell.solution);
        if (cell.solution.converged) ++converged;
        checkpoint_.put(cell.solution);
        if (!cell.error.empty()) note_failure(cell_label(cell.lambda, cell.temperature) + ": " + cell.error);
        correlation_rows(corr, cell, "");
        if (oracle_) correlation_rows(corr, exact[k], "_exact");
        const ScalingCell* ex = oracle_ ? &exact[k] : nullptr;
        fits.row(row({format_real(cell.lambda), format_real(cell.temperature), format_real(scale(cell.xi_fit)),
                      format_real(scale(cell.tau_fit)), format_real(residual(cell.xi_fit)),
                      format_real(residual(cell.tau_fit)), std::to_string(cell.window),
                      format_real(ex ? scale(ex->xi_fit) : std::nullopt),
                      format_real(ex ? scale(ex->tau_fit) : std::nullopt),
                      format_real(ex ? residual(ex->xi_fit) : std::nullopt),
                      format_real(ex ? residual(ex->tau_fit) : std::nullopt),
                      ex ? std::to_string(ex->window) : ""}));
      }
    }
    save_checkpoint();
    finish_cells(converged);
  }

  void run_oracle() {
    if (!oracle_) {
      throw ConfigError("n_sites: the oracle command needs n_sites <= " + std::to_string(kOracleCap));
    }
    const std::size_t nt = cfg_.temperatures.size();
    const std::size_t L = cfg_.lambdas.size();
    std::vector<ExactGibbs> gibbs(L * nt);
    std::vector<SusceptibilityValue> chis(L * nt);
    parallel_for(L * nt, opt_.workers, [&](std::size_t k) {
      const ModelParams model = base_.with_lambda(cfg_.lambdas[k / nt]);
      gibbs[k] = exact_gibbs(model, cfg_.temperatures[k % nt]);
      chis[k] = exact_susceptibility(model, cfg_.temperatures[k % nt], cfg_.delta_lambda);
    });

    CsvWriter fe = open("free_energy.csv", free_energy_columns());
    CsvWriter chi = open("susceptibility.csv", {"lambda", "temperature", "chi_var", "chi_exact",
                                                "second_difference_var", "second_difference_exact"});
    for (std::size_t li = 0; li < L; ++li) {
      for (std::size_t ti = nt; ti-- > 0;) {
        const std::size_t k = li * nt + ti;
        const std::string lam = format_real(cfg_.lambdas[li]);
        const std::string temp = format_real(cfg_.temperatures[ti]);
        fe.row(row({lam, temp, "", format_real(gibbs[k].free_energy), format_real(gibbs[k].energy),
                    format_real(gibbs[k].entropy), "", ""}));
        chi.row(row({lam, temp, "", format_real(chis[k].chi), "", format_real(chis[k].second_difference)}));
        ++result_.cells;
      }
    }
    if (cfg_.temperatures.front() <= cfg_.coupling_j * (1.0 + 1e-12)) {
      const std::vector<CrossoverPoint> exact =
          exact_crossover(base_, cfg_.lambdas, cfg_.temperatures, cfg_.delta_lambda);
      CsvWriter cross = open("crossover.csv", {"lambda", "T_star_var", "T_star_exact", "boundary_flag",
                                               "T_star_grid_var", "T_star_grid_exact",
                                               "boundary_flag_exact"});
      for (const CrossoverPoint& p : exact) {
        cross.row(row({format_real(p.lambda), "", format_real(p.t_star), "", "", format_real(p.t_star_grid),
                       p.boundary ? "1" : "0"}));
      }
    } else {
      log_ << "crossover.csv skipped: temperatures above J are outside the crossover window\n";
    }
  }

  void run_verify() {
    const std::vector<VerifyCheck> checks = run_verify_suite(cfg_, opt_.seed);
    CsvWriter csv = open("verify.csv", {"lambda", "temperature", "check", "passed", "total", "worst",
                                        "tolerance"});
    int passed = 0;
    int total = 0;
    for (const VerifyCheck& c : checks) {
      log_ << (c.passed == c.total ? "PASS " : "FAIL ") << c.name << ": " << c.passed << "/" << c.total
           << " (worst " << format_real(c.worst) << ", tolerance " << format_real(c.tolerance) << ")\n";
      csv.row(row({format_real(cfg_.lambdas.front()), format_real(cfg_.temperatures.front()), c.name,
                   std::to_string(c.passed), std::to_string(c.total), format_real(c.worst),
                   format_real(c.tolerance)}));
      passed += c.passed;
      total += c.total;
      if (c.passed != c.total) note_failure(c.name + ": " + std::to_string(c.total - c.passed) + " failed");
    }
    result_.cells = static_cast<std::size_t>(total);
    log_ << "verify: " << passed << "/" << total << " checks passed\n";
    if (passed != total) result_.exit_code = kExitRuntime;
  }

  const RunConfig& cfg_;
  const RunOptions& opt_;
  std::ostream& log_;
  ModelParams base_;
  SolverOptions solver_;
  bool oracle_ = false;
  std::vector<std::string> provenance_;
  Checkpoint checkpoint_;
  std::optional<Checkpoint> resumed_;
  SolutionLookup lookup_;
  RunResult result_;
};

}  // namespace

RunResult run(const RunConfig& config, const RunOptions& options, std::ostream& log) {
  const auto start = std::chrono::steady_clock::now();
  Session session(config, options, log);
  RunResult result;
  try {
    result = session.execute();
  } catch (const ConfigError&) {
    throw;
  } catch (const CheckpointError& e) {
    throw ConfigError(e.what());
  } catch (const std::exception& e) {
    session.result().exit_code = kExitRuntime;
    session.result().failures.push_back(std::string("run aborted: ") + e.what());
    session.write_manifest(std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count());
    throw;
  }
  session.write_manifest(std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count());
  result.outputs.push_back(options.out_dir / "manifest.json");
  return result;
}

}  // namespace qcrit::app
