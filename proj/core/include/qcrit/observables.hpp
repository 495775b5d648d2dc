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
#include <functional>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "qcrit/correlations.hpp"
#include "qcrit/exact_oracle.hpp"
#include "qcrit/gibbs_vqa.hpp"

namespace qcrit {

class UnconvergedInput : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Second-difference susceptibility from solutions at lambda - d, lambda, lambda + d.
/// Rejects unconverged inputs and mismatched (N, T, p) or offsets.
SusceptibilityValue susceptibility(const ThermalSolution& minus, const ThermalSolution& center,
                                   const ThermalSolution& plus, double delta_lambda);

struct ScanOptions {
  SolverOptions solver;
  double delta_lambda = 1e-3;
  std::uint64_t seed = 0;
  int workers = 0;
  SolutionLookup lookup;
};

struct SusceptibilityCell {
  double temperature = 0.0;
  ThermalSolution minus;
  ThermalSolution center;
  ThermalSolution plus;
  std::optional<SusceptibilityValue> chi;
  std::string error;
};

struct CrossoverRecord {
  double lambda = 0.0;
  std::vector<SusceptibilityCell> cells;  // in temperature-grid order
  double t_star = 0.0;
  double t_star_grid = 0.0;
  bool boundary = false;
  std::string error;  // non-empty when no finite chi was available
};

/// For each lambda, anneals the centre chain down the (strictly descending)
/// temperature grid; the lambda +- d solves at each temperature are
/// warm-started from the centre solution at that temperature.
std::vector<CrossoverRecord> crossover_scan(const ModelParams& model, std::span<const double> lambdas,
                                            std::span<const double> temperatures,
                                            const ScanOptions& options);

struct StudyOptions {
  SolverOptions solver;
  std::uint64_t seed = 0;
  std::vector<int> spacings;  // empty: 1..N/2
  std::vector<double> times;  // empty: 0.1, 0.2, ..., 3.0
  int workers = 0;
  SolutionLookup lookup;
};

std::vector<int> default_spacings(int n_sites);
std::vector<double> default_time_grid();

struct ScalingCell {
  double lambda = 0.0;
  double temperature = 0.0;
  ThermalSolution solution;
  std::vector<int> spacings;
  std::vector<double> static_values;
  std::vector<double> times;
  std::vector<double> dynamic_values;
  std::size_t window = 0;  // leading points of `times` used for the tau fit
  std::optional<CorrelationFit> xi_fit;
  std::optional<CorrelationFit> tau_fit;
  std::string error;
};

/// Correlations and xi / tau fits on variational states along annealed chains
/// (one chain per lambda, strictly descending temperatures).
std::vector<ScalingCell> scaling_study(const ModelParams& model, std::span<const double> lambdas,
                                       std::span<const double> temperatures,
                                       const StudyOptions& options);

/// Fills R(n), C(t) and both fits for a given state. Fit failures go to `cell.error`.
void measure_correlations(ScalingCell& cell, const DensityMatrix& state, const Propagator& evolution);

}  // namespace qcrit
