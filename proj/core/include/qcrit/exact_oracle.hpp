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

#include <span>
#include <vector>

#include "qcrit/correlations.hpp"
#include "qcrit/dense_backend.hpp"
#include "qcrit/spin_model.hpp"

namespace qcrit {

/// Exact thermal data from full diagonalization.
struct ExactGibbs {
  ModelParams model;
  double temperature = 0.0;
  SpectralDecomposition spectral;
  RealVector boltzmann_weights;  // normalized, ordered like spectral.eigenvalues
  double free_energy = 0.0;      // -T ln Z
  double energy = 0.0;
  double entropy = 0.0;

  /// sum_k w_k |psi_k><psi_k|
  DensityMatrix density_matrix() const;
};

ExactGibbs exact_gibbs(const ModelParams& model, double temperature, int dense_cap = kDefaultDenseCap);

/// -T ln Z from the spectrum only.
double exact_free_energy(const ModelParams& model, double temperature,
                         int dense_cap = kDefaultDenseCap);
double exact_free_energy(const RealVector& spectrum, double temperature);

struct SusceptibilityValue {
  double chi = 0.0;                 // -(F+ + F- - 2F) / d^2, positive and peaked
  double second_difference = 0.0;   // (F+ + F- - 2F) / d^2, the unsigned-convention value
};

SusceptibilityValue second_difference_susceptibility(double f_minus, double f_center, double f_plus,
                                                     double delta_lambda);

SusceptibilityValue exact_susceptibility(const ModelParams& model, double temperature,
                                         double delta_lambda = 1e-3);

struct CrossoverPoint {
  double lambda = 0.0;
  double t_star = 0.0;       // refined
  double t_star_grid = 0.0;  // grid argmax
  bool boundary = false;
  std::vector<double> temperatures;
  std::vector<SusceptibilityValue> chi;
};

/// Temperatures must lie in (0, J]. Grid order is preserved in the output.
std::vector<CrossoverPoint> exact_crossover(const ModelParams& model, std::span<const double> lambdas,
                                            std::span<const double> temperatures,
                                            double delta_lambda = 1e-3);

struct CorrelationValues {
  std::vector<double> static_values;   // R(n) per requested spacing
  std::vector<double> dynamic_values;  // C(t) per requested time
};

CorrelationValues exact_correlations(const ModelParams& model, double temperature,
                                     std::span<const int> spacings, std::span<const double> times);

}  // namespace qcrit
