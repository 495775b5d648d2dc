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

#include "qcrit/ansatz.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace qcrit {

AnsatzParams::AnsatzParams(RealVector theta, Eigen::MatrixXd alpha, Eigen::MatrixXd eta)
    : theta_(std::move(theta)), alpha_(std::move(alpha)), eta_(std::move(eta)) {
  if (theta_.size() < 1) throw std::invalid_argument("AnsatzParams: theta is empty");
  if (alpha_.rows() < 1) throw std::invalid_argument("AnsatzParams: need at least one block");
  if (alpha_.cols() != theta_.size() || eta_.cols() != theta_.size()) {
    throw std::invalid_argument("AnsatzParams: alpha/eta rows must have length N");
  }
  if (eta_.rows() != alpha_.rows()) {
    throw std::invalid_argument("AnsatzParams: alpha and eta must have the same block count");
  }
}

AnsatzParams AnsatzParams::zeros(int n_sites, int blocks_p) {
  if (n_sites < 1 || blocks_p < 1) throw std::invalid_argument("AnsatzParams::zeros: bad shape");
  return {RealVector::Zero(n_sites), Eigen::MatrixXd::Zero(blocks_p, n_sites),
          Eigen::MatrixXd::Zero(blocks_p, n_sites)};
}

AnsatzParams AnsatzParams::from_flat(int n_sites, int blocks_p, const RealVector& flat) {
  AnsatzParams out = zeros(n_sites, blocks_p);
  if (static_cast<std::size_t>(flat.size()) != out.parameter_count()) {
    throw std::invalid_argument("AnsatzParams::from_flat: expected " +
                                std::to_string(out.parameter_count()) + " values, got " +
                                std::to_string(flat.size()));
  }
  out.theta_ = flat.head(n_sites);
  for (int l = 0; l < blocks_p; ++l) {
    for (int i = 0; i < n_sites; ++i) {
      out.alpha_(l, i) = flat[static_cast<Eigen::Index>(out.alpha_index(l, i))];
      out.eta_(l, i) = flat[static_cast<Eigen::Index>(out.eta_index(l, i))];
    }
  }
  return out;
}

RealVector AnsatzParams::flatten() const {
  RealVector flat(static_cast<Eigen::Index>(parameter_count()));
  flat.head(n_sites()) = theta_;
  for (int l = 0; l < blocks(); ++l) {
    for (int i = 0; i < n_sites(); ++i) {
      flat[static_cast<Eigen::Index>(alpha_index(l, i))] = alpha_(l, i);
      flat[static_cast<Eigen::Index>(eta_index(l, i))] = eta_(l, i);
    }
  }
  return flat;
}

std::size_t AnsatzParams::alpha_index(int block, int site) const {
  const auto n = static_cast<std::size_t>(n_sites());
  return n + static_cast<std::size_t>(block) * n + static_cast<std::size_t>(site);
}

std::size_t AnsatzParams::eta_index(int block, int site) const {
  const auto n = static_cast<std::size_t>(n_sites());
  return n + static_cast<std::size_t>(blocks()) * n + static_cast<std::size_t>(block) * n +
         static_cast<std::size_t>(site);
}

std::vector<CircuitGate> circuit_gates(const AnsatzParams& params, const HamiltonianTerms& terms) {
  const int n = terms.n_sites();
  if (params.n_sites() != n) {
    throw std::invalid_argument("circuit_gates: ansatz has " + std::to_string(params.n_sites()) +
                                " sites, Hamiltonian has " + std::to_string(n));
  }
  const auto fields = terms.field_terms();
  const auto hopping = terms.hopping_terms();
  std::vector<CircuitGate> gates;
  gates.reserve(static_cast<std::size_t>(2 * n * params.blocks()));
  for (int l = 0; l < params.blocks(); ++l) {
    for (int i = 0; i < n; ++i) {
      gates.push_back({fields[static_cast<std::size_t>(i)].with_coefficient(1.0), params.alpha()(l, i),
                       params.alpha_index(l, i)});
    }
    for (int i = 0; i < n; ++i) {
      gates.push_back({hopping[static_cast<std::size_t>(i)].with_coefficient(1.0), params.eta()(l, i),
                       params.eta_index(l, i)});
    }
  }
  return gates;
}

RealVector product_spectrum_weights(const RealVector& theta) {
  const int n = static_cast<int>(theta.size());
  if (n < 1 || n > 62) throw std::invalid_argument("product_spectrum_weights: bad qubit count");
  const Eigen::Index dim = Eigen::Index{1} << n;
  RealVector w = RealVector::Ones(dim);
  for (int q = 0; q < n; ++q) {
    const double s = std::sin(theta[q]);
    const double sin2 = s * s;
    const double cos2 = 1.0 - sin2;
    const int bit = n - 1 - q;
    for (Eigen::Index b = 0; b < dim; ++b) {
      w[b] *= ((b >> bit) & 1) ? cos2 : sin2;
    }
  }
  return w;
}

DensityMatrix initial_state(const RealVector& theta) {
  RealVector w = product_spectrum_weights(theta);
  Matrix m = Matrix::Zero(w.size(), w.size());
  m.diagonal() = w.cast<Complex>();
  return DensityMatrix(std::move(m));
}

double spectrum_entropy(const RealVector& theta) {
  auto h = [](double p) { return p > 0.0 ? -p * std::log(p) : 0.0; };
  double s = 0.0;
  for (Eigen::Index q = 0; q < theta.size(); ++q) {
    const double sn = std::sin(theta[q]);
    const double cs = std::cos(theta[q]);
    s += h(sn * sn) + h(cs * cs);
  }
  return s;
}

DensityMatrix apply_circuit(const DensityMatrix& state, const AnsatzParams& params,
                            const HamiltonianTerms& terms) {
  if (state.qubit_count() != terms.n_sites()) {
    throw std::invalid_argument("apply_circuit: state has " + std::to_string(state.qubit_count()) +
                                " qubits, Hamiltonian has " + std::to_string(terms.n_sites()));
  }
  Matrix m = state.matrix();
  Matrix scratch;
  for (const CircuitGate& gate : circuit_gates(params, terms)) {
    if (gate.angle != 0.0) conjugate_by_pauli_exp(m, gate.generator, gate.angle, scratch);
  }
  return DensityMatrix(std::move(m));
}

DensityMatrix variational_state(const AnsatzParams& params, const HamiltonianTerms& terms) {
  return apply_circuit(initial_state(params.theta()), params, terms);
}

}  // namespace qcrit
