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

#include "qcrit/spin_model.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace qcrit {

void ModelParams::validate() const {
  if (n_sites < 2) {
    throw std::invalid_argument("n_sites must be >= 2, got " + std::to_string(n_sites));
  }
  if (!std::isfinite(coupling_j) || !std::isfinite(field_lambda)) {
    throw std::invalid_argument("coupling_j and field_lambda must be finite");
  }
}

HamiltonianTerms::HamiltonianTerms(ModelParams params, std::vector<PauliString> terms)
    : params_(params), terms_(std::move(terms)) {
  params_.validate();
  if (terms_.size() != static_cast<std::size_t>(2 * params_.n_sites)) {
    throw std::invalid_argument("Kitaev ring needs exactly 2N terms");
  }
  for (const auto& t : terms_) {
    if (t.qubit_count() != params_.n_sites) {
      throw std::invalid_argument("term qubit count does not match n_sites");
    }
  }
}

HamiltonianTerms build_kitaev_ring(const ModelParams& params) {
  params.validate();
  const int n = params.n_sites;
  const auto size = static_cast<std::size_t>(n);
  std::vector<PauliString> terms;
  terms.reserve(2 * size);

  for (int i = 0; i + 1 < n; ++i) {
    std::vector<Pauli> letters(size, Pauli::I);
    letters[static_cast<std::size_t>(i)] = Pauli::X;
    letters[static_cast<std::size_t>(i + 1)] = Pauli::X;
    terms.emplace_back(std::move(letters), -params.coupling_j);
  }

  // String operator over the interior sites; empty for n == 2.
  std::vector<Pauli> boundary(size, Pauli::Z);
  boundary.front() = Pauli::Y;
  boundary.back() = Pauli::Y;
  terms.emplace_back(std::move(boundary), -params.coupling_j);

  for (int i = 0; i < n; ++i) {
    std::vector<Pauli> letters(size, Pauli::I);
    letters[static_cast<std::size_t>(i)] = Pauli::Z;
    terms.emplace_back(std::move(letters), -params.field_lambda);
  }
  return {params, std::move(terms)};
}

Matrix dense_matrix(std::span<const PauliString> terms, int dense_cap) {
  if (terms.empty()) throw std::invalid_argument("dense_matrix: no terms");
  const int n = terms.front().qubit_count();
  if (n > dense_cap) {
    throw std::length_error("dense_matrix: " + std::to_string(n) + " qubits exceeds dense cap " +
                            std::to_string(dense_cap));
  }
  const Eigen::Index dim = Eigen::Index{1} << n;
  Matrix m = Matrix::Zero(dim, dim);
  for (const auto& term : terms) {
    if (term.qubit_count() != n) throw std::invalid_argument("dense_matrix: mixed qubit counts");
    const std::uint64_t x = term.x_mask();
    for (Eigen::Index col = 0; col < dim; ++col) {
      const auto b = static_cast<std::uint64_t>(col);
      m(static_cast<Eigen::Index>(b ^ x), col) += term.coefficient() * term.phase(b);
    }
  }
  return m;
}

Matrix dense_matrix(const HamiltonianTerms& terms, int dense_cap) {
  return dense_matrix(std::span<const PauliString>(terms.terms()), dense_cap);
}

Matrix dense_matrix(const PauliString& term, int dense_cap) {
  return dense_matrix(std::span<const PauliString>(&term, 1), dense_cap);
}

PauliString build_observable_xx(int n_sites, int i, int j) {
  if (n_sites < 1 || i < 1 || j < 1 || i > n_sites || j > n_sites) {
    throw std::out_of_range("build_observable_xx: sites (" + std::to_string(i) + ", " +
                            std::to_string(j) + ") outside 1.." + std::to_string(n_sites));
  }
  std::vector<Pauli> letters(static_cast<std::size_t>(n_sites), Pauli::I);
  if (i != j) {
    letters[static_cast<std::size_t>(i - 1)] = Pauli::X;
    letters[static_cast<std::size_t>(j - 1)] = Pauli::X;
  }
  return PauliString(std::move(letters));
}

}  // namespace qcrit
