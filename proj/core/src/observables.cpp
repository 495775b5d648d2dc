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

#include "qcrit/observables.hpp"

#include <cmath>
#include <string>

#include "qcrit/parallel.hpp"

namespace qcrit {
namespace {

void require_descending(std::span<const double> temperatures, const char* where) {
  if (temperatures.empty()) throw std::invalid_argument(std::string(where) + ": empty temperature grid");
  for (std::size_t k = 0; k < temperatures.size(); ++k) {
    if (!(temperatures[k] > 0.0)) {
      throw std::invalid_argument(std::string(where) + ": temperatures must be > 0");
    }
    if (k > 0 && !(temperatures[k] < temperatures[k - 1])) {
      throw std::invalid_argument(std::string(where) + ": temperatures must be strictly descending");
    }
  }
}

void append_error(std::string& errors, const std::string& message) {
  if (!errors.empty()) errors += "; ";
  errors += message;
}

}  // namespace

SusceptibilityValue susceptibility(const ThermalSolution& minus, const ThermalSolution& center,
                                   const ThermalSolution& plus, double delta_lambda) {
  if (!(delta_lambda > 0.0)) throw std::invalid_argument("delta_lambda must be > 0");
  for (const ThermalSolution* s : {&minus, &center, &plus}) {
    if (!s->converged) {
      throw UnconvergedInput("susceptibility: unconverged solution at lambda = " +
                             std::to_string(s->model.field_lambda) +
                             ", T = " + std::to_string(s->temperature) +
                             " (grad_norm " + std::to_string(s->grad_norm) + ")");
    }
    if (s->model.n_sites != center.model.n_sites || s->temperature != center.temperature ||
        s->blocks_p != center.blocks_p || s->model.coupling_j != center.model.coupling_j) {
      throw std::invalid_argument("susceptibility: solutions differ in (N, T, p, J)");
    }
  }
  const double lambda = center.model.field_lambda;
  const double tol = 1e-12 * (1.0 + std::abs(lambda));
  if (std::abs(plus.model.field_lambda - (lambda + delta_lambda)) > tol ||
      std::abs(minus.model.field_lambda - (lambda - delta_lambda)) > tol) {
    throw std::invalid_argument("susceptibility: field offsets do not match delta_lambda");
  }
  return second_difference_susceptibility(minus.free_energy, center.free_energy, plus.free_energy,
                                          delta_lambda);
}

std::vector<CrossoverRecord> crossover_scan(const ModelParams& model, std::span<const double> lambdas,
                                            std::span<const double> temperatures,
                                            const ScanOptions& options) {
  model.validate();
  require_descending(temperatures, "crossover_scan");
  if (temperatures.front() > model.coupling_j * (1.0 + 1e-12)) {
    throw std::invalid_argument("crossover_scan: temperatures must lie in (0, J]");
  }
  if (lambdas.empty()) throw std::invalid_argument("crossover_scan: empty lambda grid");
  if (!(options.delta_lambda > 0.0)) throw std::invalid_argument("delta_lambda must be > 0");

  std::vector<CrossoverRecord> records(lambdas.size());
  parallel_for(lambdas.size(), options.workers, [&](std::size_t li) {
    const double lambda = lambdas[li];
    const double d = options.delta_lambda;
    const std::uint64_t seed = chain_seed(options.seed, lambda);
    CrossoverRecord& record = records[li];
    record.lambda = lambda;
    const ThermalSolution* previous = nullptr;
    for (double t : temperatures) {
      SusceptibilityCell cell;
      cell.temperature = t;
      cell.center =
          solve_cell(model.with_lambda(lambda), t, options.solver, seed, previous, options.lookup);
      cell.minus = solve_cell(model.with_lambda(lambda - d), t, options.solver, seed, &cell.center,
                              options.lookup);
      cell.plus = solve_cell(model.with_lambda(lambda + d), t, options.solver, seed, &cell.center,
                             options.lookup);
      try {
        cell.chi = susceptibility(cell.minus, cell.center, cell.plus, d);
      } catch (const std::exception& e) {
        cell.error = e.what();
      }
      record.cells.push_back(std::move(cell));
      previous = &record.cells.back().center;
    }

    std::vector<double> ts;
    std::vector<double> chis;
    for (const SusceptibilityCell& cell : record.cells) {
      ts.push_back(cell.temperature);
      chis.push_back(cell.chi ? cell.chi->chi : std::nan(""));
    }
    try {
      const PeakLocation peak = locate_peak(ts, chis);
      record.t_star = peak.refined;
      record.t_star_grid = ts[peak.index];
      record.boundary = peak.boundary;
    } catch (const std::exception& e) {
      record.t_star = record.t_star_grid = std::nan("");
      record.error = e.what();
    }
  });
  return records;
}

std::vector<int> default_spacings(int n_sites) {
  std::vector<int> out;
  for (int n = 1; n <= n_sites / 2; ++n) out.push_back(n);
  return out;
}

std::vector<double> default_time_grid() {
  std::vector<double> out;
  for (int k = 1; k <= 30; ++k) out.push_back(0.1 * k);
  return out;
}

void measure_correlations(ScalingCell& cell, const DensityMatrix& state, const Propagator& evolution) {
  cell.static_values.clear();
  for (int n : cell.spacings) cell.static_values.push_back(static_correlation(state, n));
  try {
    std::vector<double> xs(cell.spacings.begin(), cell.spacings.end());
    cell.xi_fit = fit_exponential(xs, cell.static_values, FitKind::Spatial);
  } catch (const std::exception& e) {
    append_error(cell.error, std::string("xi fit: ") + e.what());
  }

  cell.dynamic_values.clear();
  for (double t : cell.times) cell.dynamic_values.push_back(aggregate_C(state, evolution, t));
  try {
    cell.window = fit_window_length(cell.dynamic_values);
    cell.tau_fit = fit_exponential(std::span(cell.times).first(cell.window),
                                   std::span(cell.dynamic_values).first(cell.window),
                                   FitKind::Temporal);
  } catch (const std::exception& e) {
    append_error(cell.error, std::string("tau fit: ") + e.what());
  }
}

std::vector<ScalingCell> scaling_study(const ModelParams& model, std::span<const double> lambdas,
                                       std::span<const double> temperatures,
                                       const StudyOptions& options) {
  model.validate();
  require_descending(temperatures, "scaling_study");
  if (lambdas.empty()) throw std::invalid_argument("scaling_study: empty lambda grid");
  const std::vector<int> spacings =
      options.spacings.empty() ? default_spacings(model.n_sites) : options.spacings;
  const std::vector<double> times = options.times.empty() ? default_time_grid() : options.times;
  for (std::size_t k = 0; k < times.size(); ++k) {
    if (k == 0 ? !(times[0] > 0.0) : !(times[k] > times[k - 1])) {
      throw std::invalid_argument("scaling_study: time grid must be ascending from a positive start");
    }
  }

  std::vector<ScalingCell> cells(lambdas.size() * temperatures.size());
  parallel_for(lambdas.size(), options.workers, [&](std::size_t li) {
    const ModelParams chain_model = model.with_lambda(lambdas[li]);
    const std::uint64_t seed = chain_seed(options.seed, lambdas[li]);
    const HamiltonianTerms terms = build_kitaev_ring(chain_model);
    const Propagator evolution(chain_model, options.solver.dense_cap);
    const ThermalSolution* previous = nullptr;
    for (std::size_t ti = 0; ti < temperatures.size(); ++ti) {
      ScalingCell& cell = cells[li * temperatures.size() + ti];
      cell.lambda = lambdas[li];
      cell.temperature = temperatures[ti];
      cell.spacings = spacings;
      cell.times = times;
      try {
        cell.solution = solve_cell(chain_model, temperatures[ti], options.solver, seed, previous,
                                   options.lookup);
        previous = &cell.solution;
        measure_correlations(cell, variational_state(cell.solution.params, terms), evolution);
      } catch (const std::exception& e) {
        append_error(cell.error, e.what());
      }
    }
  });
  return cells;
}

}  // namespace qcrit
