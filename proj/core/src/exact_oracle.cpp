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

#include "qcrit/exact_oracle.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include <Eigen/Eigenvalues>

namespace qcrit {
namespace {

void check_temperature(double temperature) {
  if (!(temperature > 0.0) || !std::isfinite(temperature)) {
    throw std::invalid_argument("temperature must be positive and finite");
  }
}

// Weights exp(-(E_k - E_0)/T), normalized; returns ln of the unnormalized sum.
double boltzmann(const RealVector& spectrum, double temperature, RealVector& weights) {
  const double e0 = spectrum.minCoeff();
  weights = (-(spectrum.array() - e0) / temperature).exp().matrix();
  const double sum = weights.sum();
  weights /= sum;
  return std::log(sum);
}

}  // namespace

DensityMatrix ExactGibbs::density_matrix() const {
  const Matrix& v = spectral.eigenvectors;
  return DensityMatrix(v * boltzmann_weights.cast<Complex>().asDiagonal() * v.adjoint());
}

ExactGibbs exact_gibbs(const ModelParams& model, double temperature, int dense_cap) {
  check_temperature(temperature);
  ExactGibbs out;
  out.model = model;
  out.temperature = temperature;
  out.spectral = eig_hermitian(dense_matrix(build_kitaev_ring(model), dense_cap));
  const RealVector& e = out.spectral.eigenvalues;
  const double log_sum = boltzmann(e, temperature, out.boltzmann_weights);
  out.free_energy = e.minCoeff() - temperature * log_sum;
  out.energy = out.boltzmann_weights.dot(e);
  double s = 0.0;
  for (Eigen::Index k = 0; k < e.size(); ++k) {
    const double w = out.boltzmann_weights[k];
    if (w > 0.0) s -= w * std::log(w);
  }
  out.entropy = s;
  return out;
}

double exact_free_energy(const RealVector& spectrum, double temperature) {
  check_temperature(temperature);
  RealVector weights;
  const double log_sum = boltzmann(spectrum, temperature, weights);
  return spectrum.minCoeff() - temperature * log_sum;
}

double exact_free_energy(const ModelParams& model, double temperature, int dense_cap) {
  const Matrix h = dense_matrix(build_kitaev_ring(model), dense_cap);
  Eigen::SelfAdjointEigenSolver<Matrix> es(h, Eigen::EigenvaluesOnly);
  return exact_free_energy(es.eigenvalues(), temperature);
}

SusceptibilityValue second_difference_susceptibility(double f_minus, double f_center, double f_plus,
                                                     double delta_lambda) {
  if (!(delta_lambda > 0.0)) throw std::invalid_argument("delta_lambda must be > 0");
  SusceptibilityValue out;
  out.second_difference = (f_plus + f_minus - 2.0 * f_center) / (delta_lambda * delta_lambda);
  out.chi = -out.second_difference;
  return out;
}

SusceptibilityValue exact_susceptibility(const ModelParams& model, double temperature,
                                         double delta_lambda) {
  if (!(delta_lambda > 0.0)) throw std::invalid_argument("delta_lambda must be > 0");
  const double lambda = model.field_lambda;
  return second_difference_susceptibility(
      exact_free_energy(model.with_lambda(lambda - delta_lambda), temperature),
      exact_free_energy(model, temperature),
      exact_free_energy(model.with_lambda(lambda + delta_lambda), temperature), delta_lambda);
}

std::vector<CrossoverPoint> exact_crossover(const ModelParams& model, std::span<const double> lambdas,
                                            std::span<const double> temperatures,
                                            double delta_lambda) {
  if (lambdas.empty() || temperatures.empty()) {
    throw std::invalid_argument("exact_crossover: empty grid");
  }
  for (double t : temperatures) {
    if (!(t > 0.0) || t > model.coupling_j * (1.0 + 1e-12)) {
      throw std::invalid_argument("exact_crossover: temperature " + std::to_string(t) +
                                  " outside (0, J]");
    }
  }
  std::vector<CrossoverPoint> out;
  out.reserve(lambdas.size());
  for (double lambda : lambdas) {
    CrossoverPoint point;
    point.lambda = lambda;
    point.temperatures.assign(temperatures.begin(), temperatures.end());
    std::vector<double> chi;
    for (double t : temperatures) {
      point.chi.push_back(exact_susceptibility(model.with_lambda(lambda), t, delta_lambda));
      chi.push_back(point.chi.back().chi);
    }
    const PeakLocation peak = locate_peak(point.temperatures, chi);
    point.t_star = peak.refined;
    point.t_star_grid = point.temperatures[peak.index];
    point.boundary = peak.boundary;
    out.push_back(std::move(point));
  }
  return out;
}

CorrelationValues exact_correlations(const ModelParams& model, double temperature,
                                     std::span<const int> spacings, std::span<const double> times) {
  const ExactGibbs gibbs = exact_gibbs(model, temperature);
  const DensityMatrix rho = gibbs.density_matrix();
  const Propagator evolution(gibbs.spectral);
  CorrelationValues out;
  for (int n : spacings) out.static_values.push_back(static_correlation(rho, n));
  for (double t : times) out.dynamic_values.push_back(aggregate_C(rho, evolution, t));
  return out;
}

}  // namespace qcrit
