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

#include "qcrit/gibbs_vqa.hpp"

#include <bit>
#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>
#include <string>

namespace qcrit {

double qubit_entropy_derivative(double theta) {
  const double s = std::sin(theta);
  const double c = std::cos(theta);
  const double s2 = s * s;
  const double c2 = c * c;
  if (s2 == 0.0 || c2 == 0.0) return 0.0;
  return std::sin(2.0 * theta) * std::log(c2 / s2);
}

FreeEnergyObjective::FreeEnergyObjective(HamiltonianTerms terms, double temperature, int blocks_p,
                                         int dense_cap)
    : terms_(std::move(terms)), temperature_(temperature), blocks_p_(blocks_p) {
  if (!(temperature > 0.0) || !std::isfinite(temperature)) {
    throw std::invalid_argument("temperature must be positive and finite");
  }
  if (blocks_p < 1) throw std::invalid_argument("blocks_p must be >= 1");
  const int n = terms_.n_sites();
  if (n > dense_cap) {
    throw std::length_error("FreeEnergyObjective: " + std::to_string(n) +
                            " qubits exceeds dense cap " + std::to_string(dense_cap));
  }
  for (const PauliString& term : terms_.terms()) {
    term_actions_.emplace_back(term);
    term_coefficients_.push_back(term.coefficient());
  }
  for (const CircuitGate& gate : circuit_gates(AnsatzParams::zeros(n, blocks_p_), terms_)) {
    actions_.emplace_back(gate.generator);
    slots_.push_back(static_cast<Eigen::Index>(gate.parameter_index));
  }
}

FreeEnergyValue FreeEnergyObjective::forward(const RealVector& flat) {
  const int n = terms_.n_sites();
  const Eigen::Index expected = static_cast<Eigen::Index>(n) * (2 * blocks_p_ + 1);
  if (flat.size() != expected) {
    throw std::invalid_argument("parameter vector has " + std::to_string(flat.size()) +
                                " entries, expected " + std::to_string(expected));
  }
  const RealVector theta = flat.head(n);
  weights_ = product_spectrum_weights(theta);
  const Eigen::Index dim = weights_.size();
  states_.setIdentity(dim, dim);
  for (std::size_t k = 0; k < actions_.size(); ++k) {
    const double angle = flat[slots_[k]];
    if (angle != 0.0) rotate_batch(states_, actions_[k], angle, scratch_);
  }
  adjoint_.setZero(dim, dim);
  for (std::size_t t = 0; t < term_actions_.size(); ++t) {
    accumulate_pauli(adjoint_, states_, term_actions_[t], term_coefficients_[t]);
  }
  energies_ = states_.conjugate().cwiseProduct(adjoint_).rowwise().sum().real();

  FreeEnergyValue out;
  out.energy = weights_.dot(energies_);
  out.entropy = spectrum_entropy(theta);
  out.free_energy = out.energy - temperature_ * out.entropy;
  return out;
}

FreeEnergyValue FreeEnergyObjective::value(const RealVector& flat) { return forward(flat); }

FreeEnergyValue FreeEnergyObjective::value_and_gradient(const RealVector& flat, RealVector& grad) {
  const int n = terms_.n_sites();
  const FreeEnergyValue out = forward(flat);
  grad.setZero(flat.size());

  // dE/dphi_k = 2 Im sum_b w_b <H psi_b| P_k |psi_b>, both pulled back to just after gate k.
  adjoint_ = weights_.asDiagonal() * adjoint_;
  for (std::size_t k = actions_.size(); k-- > 0;) {
    grad[slots_[k]] = 2.0 * batch_pauli_overlap(adjoint_, states_, actions_[k]).imag();
    const double angle = flat[slots_[k]];
    if (angle != 0.0) {
      rotate_batch(states_, actions_[k], -angle, scratch_);
      rotate_batch(adjoint_, actions_[k], -angle, scratch_);
    }
  }

  // theta enters through the weights w_b and through S.
  const Eigen::Index dim = weights_.size();
  const RealVector theta = flat.head(n);
  std::vector<double> sin2(static_cast<std::size_t>(n));
  std::vector<double> cos2(static_cast<std::size_t>(n));
  for (int q = 0; q < n; ++q) {
    const double s = std::sin(theta[q]);
    sin2[static_cast<std::size_t>(q)] = s * s;
    cos2[static_cast<std::size_t>(q)] = 1.0 - s * s;
  }
  for (int q = 0; q < n; ++q) {
    const int bit = n - 1 - q;
    double d_energy = 0.0;
    for (Eigen::Index b = 0; b < dim; ++b) {
      double others = 1.0;
      for (int r = 0; r < n; ++r) {
        if (r == q) continue;
        others *= ((b >> (n - 1 - r)) & 1) ? cos2[static_cast<std::size_t>(r)]
                                           : sin2[static_cast<std::size_t>(r)];
      }
      const double sign = ((b >> bit) & 1) ? -1.0 : 1.0;
      d_energy += energies_[b] * sign * others;
    }
    d_energy *= std::sin(2.0 * theta[q]);
    grad[q] = d_energy - temperature_ * qubit_entropy_derivative(theta[q]);
  }
  return out;
}

FreeEnergyValue free_energy(const AnsatzParams& params, const HamiltonianTerms& terms,
                            double temperature) {
  FreeEnergyObjective objective(terms, temperature, params.blocks());
  return objective.value(params.flatten());
}

RealVector gradient(const AnsatzParams& params, const HamiltonianTerms& terms, double temperature) {
  FreeEnergyObjective objective(terms, temperature, params.blocks());
  RealVector grad;
  objective.value_and_gradient(params.flatten(), grad);
  return grad;
}

void SolveRequest::validate() const {
  model.validate();
  if (!(temperature > 0.0) || !std::isfinite(temperature)) {
    throw std::invalid_argument("temperature must be positive and finite");
  }
  if (blocks_p < 1) throw std::invalid_argument("blocks_p must be >= 1");
  if (!(gradient_tolerance > 0.0)) throw std::invalid_argument("gradient_tolerance must be > 0");
  if (max_iterations < 0) throw std::invalid_argument("max_iterations must be >= 0");
  if (restarts < 0) throw std::invalid_argument("restarts must be >= 0");
  if (const auto* warm = std::get_if<WarmStart>(&init)) {
    if (warm->params.n_sites() != model.n_sites || warm->params.blocks() != blocks_p) {
      throw std::invalid_argument("warm start parameters do not match (N, p)");
    }
  }
}

AnsatzParams random_initial_params(int n_sites, int blocks_p, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> theta_noise(-0.005, 0.005);
  std::uniform_real_distribution<double> angle(-0.1, 0.1);
  AnsatzParams params = AnsatzParams::zeros(n_sites, blocks_p);
  for (int i = 0; i < n_sites; ++i) params.theta()[i] = std::numbers::pi / 4 + theta_noise(rng);
  for (int l = 0; l < blocks_p; ++l) {
    for (int i = 0; i < n_sites; ++i) params.alpha()(l, i) = angle(rng);
    for (int i = 0; i < n_sites; ++i) params.eta()(l, i) = angle(rng);
  }
  return params;
}

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

}  // namespace

std::uint64_t chain_seed(std::uint64_t run_seed, double lambda) {
  return splitmix64(run_seed ^ splitmix64(std::bit_cast<std::uint64_t>(lambda)));
}

ThermalSolution solve(const SolveRequest& request) {
  request.validate();
  const int n = request.model.n_sites;
  const bool warm = std::holds_alternative<WarmStart>(request.init);
  std::uint64_t cold_seed = request.seed;
  if (const auto* r = std::get_if<RandomInit>(&request.init)) cold_seed = r->seed;
  const int starts = request.restarts > 0 ? request.restarts : (warm ? 1 : 3);

  FreeEnergyObjective objective(build_kitaev_ring(request.model), request.temperature,
                                request.blocks_p, request.dense_cap);
  const GradientObjective fn = [&objective](const RealVector& x, RealVector& g) {
    return objective.value_and_gradient(x, g).free_energy;
  };
  MinimizerOptions options;
  options.gradient_tolerance = request.gradient_tolerance;
  options.max_iterations = request.max_iterations;
  options.record_trace = request.record_trace;

  std::optional<MinimizerResult> best;
  int total_evaluations = 0;
  for (int start = 0; start < starts; ++start) {
    AnsatzParams init = (warm && start == 0)
                            ? std::get<WarmStart>(request.init).params
                            : random_initial_params(n, request.blocks_p,
                                                    splitmix64(cold_seed + static_cast<std::uint64_t>(start)));
    MinimizerResult result = minimize_bfgs(fn, init.flatten(), options);
    total_evaluations += result.evaluations;
    if (!best || result.value < best->value) best = std::move(result);
  }

  ThermalSolution out;
  out.model = request.model;
  out.temperature = request.temperature;
  out.blocks_p = request.blocks_p;
  out.seed = cold_seed;
  out.warm_started = warm;
  out.params = AnsatzParams::from_flat(n, request.blocks_p, best->x);
  const FreeEnergyValue fe = objective.value(best->x);
  out.free_energy = fe.free_energy;
  out.energy = fe.energy;
  out.entropy = fe.entropy;
  out.grad_norm = best->gradient_norm;
  out.iterations = best->iterations;
  out.evaluations = total_evaluations;
  out.converged = best->converged;
  out.stop_reason = best->stop_reason;
  out.trace = std::move(best->trace);
  return out;
}

ThermalSolution solve_cell(const ModelParams& model, double temperature, const SolverOptions& options,
                           std::uint64_t seed, const ThermalSolution* warm_from,
                           const SolutionLookup& lookup) {
  if (lookup) {
    if (std::optional<ThermalSolution> cached = lookup(model.field_lambda, temperature)) {
      if (cached->converged && cached->params.n_sites() == model.n_sites &&
          cached->blocks_p == options.blocks_p) {
        return std::move(*cached);
      }
    }
  }
  SolveRequest request;
  request.model = model;
  request.temperature = temperature;
  request.blocks_p = options.blocks_p;
  request.gradient_tolerance = options.gradient_tolerance;
  request.max_iterations = options.max_iterations;
  request.record_trace = options.record_trace;
  request.dense_cap = options.dense_cap;
  request.seed = seed;
  if (warm_from != nullptr) {
    request.init = WarmStart{warm_from->params};
    request.restarts = options.warm_restarts;
  } else {
    request.init = RandomInit{seed};
    request.restarts = options.cold_restarts;
  }
  return solve(request);
}

std::vector<ThermalSolution> anneal_schedule(const ModelParams& model,
                                             std::span<const double> temperatures,
                                             std::uint64_t seed, const SolverOptions& options,
                                             const SolutionLookup& lookup) {
  if (temperatures.empty()) throw std::invalid_argument("anneal_schedule: empty temperature list");
  for (std::size_t k = 0; k < temperatures.size(); ++k) {
    if (!(temperatures[k] > 0.0)) throw std::invalid_argument("anneal_schedule: temperatures must be > 0");
    if (k > 0 && !(temperatures[k] < temperatures[k - 1])) {
      throw std::invalid_argument("anneal_schedule: temperatures must be strictly descending");
    }
  }
  std::vector<ThermalSolution> out;
  out.reserve(temperatures.size());
  for (std::size_t k = 0; k < temperatures.size(); ++k) {
    out.push_back(solve_cell(model, temperatures[k], options, seed, k == 0 ? nullptr : &out.back(),
                             lookup));
  }
  return out;
}

}  // namespace qcrit
