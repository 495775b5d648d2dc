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

#include <cstddef>
#include <vector>

#include "qcrit/dense_backend.hpp"
#include "qcrit/spin_model.hpp"

namespace qcrit {

/// Variational parameters of the product-spectrum ansatz: spectrum angles
/// theta (N) and circuit angles alpha, eta (p x N each).
///
/// The flat layout used by the optimizer is [theta | alpha row-major | eta row-major].
class AnsatzParams {
 public:
  AnsatzParams(RealVector theta, Eigen::MatrixXd alpha, Eigen::MatrixXd eta);

  /// All angles zero.
  static AnsatzParams zeros(int n_sites, int blocks_p);
  static AnsatzParams from_flat(int n_sites, int blocks_p, const RealVector& flat);

  int n_sites() const { return static_cast<int>(theta_.size()); }
  int blocks() const { return static_cast<int>(alpha_.rows()); }
  std::size_t parameter_count() const {
    return static_cast<std::size_t>(n_sites()) * static_cast<std::size_t>(2 * blocks() + 1);
  }

  const RealVector& theta() const { return theta_; }
  const Eigen::MatrixXd& alpha() const { return alpha_; }
  const Eigen::MatrixXd& eta() const { return eta_; }
  RealVector& theta() { return theta_; }
  Eigen::MatrixXd& alpha() { return alpha_; }
  Eigen::MatrixXd& eta() { return eta_; }

  RealVector flatten() const;

  std::size_t alpha_index(int block, int site) const;
  std::size_t eta_index(int block, int site) const;

 private:
  RealVector theta_;
  Eigen::MatrixXd alpha_;
  Eigen::MatrixXd eta_;
};

/// One Pauli-exponential gate exp(-i angle P) of the circuit.
struct CircuitGate {
  PauliString generator;  // coefficient 1
  double angle = 0.0;
  std::size_t parameter_index = 0;  // into AnsatzParams::flatten()
};

/// Gate sequence in application order: for each block, Z field gates by
/// ascending site, then the XX bonds by ascending site and the boundary term.
std::vector<CircuitGate> circuit_gates(const AnsatzParams& params, const HamiltonianTerms& terms);

/// Diagonal of the product state: entry b is prod_q (bit_q(b) ? cos^2 : sin^2)(theta_q).
RealVector product_spectrum_weights(const RealVector& theta);

DensityMatrix initial_state(const RealVector& theta);

/// sum_i [-sin^2 ln sin^2 - cos^2 ln cos^2] with 0 ln 0 = 0.
double spectrum_entropy(const RealVector& theta);

DensityMatrix apply_circuit(const DensityMatrix& state, const AnsatzParams& params,
                            const HamiltonianTerms& terms);

DensityMatrix variational_state(const AnsatzParams& params, const HamiltonianTerms& terms);

}  // namespace qcrit
