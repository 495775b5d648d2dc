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
#include <string>
#include <variant>
#include <vector>

#include "qcrit/ansatz.hpp"
#include "qcrit/bfgs.hpp"
#include "qcrit/spin_model.hpp"

namespace qcrit {

struct FreeEnergyValue {
  double free_energy = 0.0;
  double energy = 0.0;
  double entropy = 0.0;
};

/// F = E - T S with E = Tr[rho H] on the variational state and S from theta alone.
FreeEnergyValue free_energy(const AnsatzParams& params, const HamiltonianTerms& terms,
                            double temperature);

/// dF/d(omega) in the flat AnsatzParams layout.
RealVector gradient(const AnsatzParams& params, const HamiltonianTerms& terms, double temperature);

/// Reusable objective for one (model, temperature, p). Holds the dense
/// Hamiltonian and scratch buffers, so an instance must not be shared across threads.
class FreeEnergyObjective {
 public:
  FreeEnergyObjective(HamiltonianTerms terms, double temperature, int blocks_p,
                      int dense_cap = kDefaultDenseCap);

  const HamiltonianTerms& terms() const { return terms_; }
  double temperature() const { return temperature_; }
  int blocks() const { return blocks_p_; }

  FreeEnergyValue value(const RealVector& flat);
  /// Returns F and writes dF into `grad` (resized as needed).
  FreeEnergyValue value_and_gradient(const RealVector& flat, RealVector& grad);

 private:
  FreeEnergyValue forward(const RealVector& flat);

  HamiltonianTerms terms_;
  double temperature_;
  int blocks_p_;
  std::vector<PauliAction> term_actions_;
  std::vector<double> term_coefficients_;
  // Gate order and generators are fixed by (terms, p); only angles vary.
  std::vector<PauliAction> actions_;
  std::vector<Eigen::Index> slots_;
  // Row b: U|b>, then H U|b> weighted by the spectrum.
  Matrix states_;
  Matrix adjoint_;
  RealVector weights_;
  RealVector energies_;
  Eigen::VectorXcd scratch_;
};

/// Derivative of the single-qubit entropy -s ln s - c ln c (s = sin^2, c = cos^2)
/// with respect to theta: sin(2 theta) ln(cot^2 theta), and 0 where sin or cos vanishes.
double qubit_entropy_derivative(double theta);

struct RandomInit {
  std::uint64_t seed = 0;
};

struct WarmStart {
  AnsatzParams params;
};

struct SolveRequest {
  ModelParams model;
  double temperature = 1.0;
  int blocks_p = 5;
  std::variant<RandomInit, WarmStart> init = RandomInit{};
  double gradient_tolerance = 1e-9;
  int max_iterations = 2000;
  /// Independent starts; 0 picks the default (3 cold, 1 warm). Extra starts
  /// beyond a warm start are cold draws.
  int restarts = 0;
  std::uint64_t seed = 0;  // for cold draws, including extra restarts of a warm start
  bool record_trace = false;
  int dense_cap = kDefaultDenseCap;

  void validate() const;
};

struct ThermalSolution {
  ModelParams model;
  double temperature = 0.0;
  int blocks_p = 0;
  std::uint64_t seed = 0;
  bool warm_started = false;

  AnsatzParams params = AnsatzParams::zeros(2, 1);
  double free_energy = 0.0;
  double energy = 0.0;
  double entropy = 0.0;
  double grad_norm = 0.0;
  int iterations = 0;
  int evaluations = 0;
  bool converged = false;
  std::string stop_reason;
  std::vector<MinimizerTraceEntry> trace;
};

/// Cold-start parameters: theta = pi/4 + U(-0.005, 0.005), circuit angles U(-0.1, 0.1).
AnsatzParams random_initial_params(int n_sites, int blocks_p, std::uint64_t seed);

ThermalSolution solve(const SolveRequest& request);

/// Per-run solver settings shared by schedules and sweeps.
struct SolverOptions {
  int blocks_p = 5;
  double gradient_tolerance = 1e-9;
  int max_iterations = 2000;
  int cold_restarts = 3;
  int warm_restarts = 1;
  bool record_trace = false;
  int dense_cap = kDefaultDenseCap;
};

/// Previously solved cells, e.g. from a checkpoint. A returned solution is used
/// as-is when converged; otherwise the cell is solved again.
using SolutionLookup =
    std::function<std::optional<ThermalSolution>(double lambda, double temperature)>;

/// One cell of an annealing chain: a converged (N, p)-matching solution from
/// `lookup` if there is one, else a cold solve (warm_from == nullptr) or a warm one.
ThermalSolution solve_cell(const ModelParams& model, double temperature, const SolverOptions& options,
                           std::uint64_t seed, const ThermalSolution* warm_from,
                           const SolutionLookup& lookup = {});

/// Solves the first temperature cold and warm-starts each later one from the
/// previous solution. `temperatures` must be strictly descending and positive.
std::vector<ThermalSolution> anneal_schedule(const ModelParams& model,
                                             std::span<const double> temperatures,
                                             std::uint64_t seed, const SolverOptions& options = {},
                                             const SolutionLookup& lookup = {});

/// Deterministic per-chain seed derived from a run seed and the chain's field value.
std::uint64_t chain_seed(std::uint64_t run_seed, double lambda);

}  // namespace qcrit
