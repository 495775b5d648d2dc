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

#include "qcrit/pauli_string.hpp"
#include "qcrit/types.hpp"

namespace qcrit {

/// Kitaev ring instance. Sites are 0-based in code; files and logs use 1-based.
struct ModelParams {
  int n_sites = 2;
  double coupling_j = 1.0;
  double field_lambda = 0.0;

  void validate() const;
  ModelParams with_lambda(double lambda) const {
    ModelParams m = *this;
    m.field_lambda = lambda;
    return m;
  }
  friend bool operator==(const ModelParams&, const ModelParams&) = default;
};

/// The 2N weighted Pauli terms of the spin-form Kitaev ring, stored as
/// [N-1 XX bonds, Y P Y boundary, N Z fields].
class HamiltonianTerms {
 public:
  HamiltonianTerms(ModelParams params, std::vector<PauliString> terms);

  const ModelParams& params() const { return params_; }
  int n_sites() const { return params_.n_sites; }
  const std::vector<PauliString>& terms() const { return terms_; }

  /// XX bonds followed by the boundary term; these mutually commute.
  std::span<const PauliString> hopping_terms() const {
    return std::span(terms_).first(static_cast<std::size_t>(params_.n_sites));
  }
  /// Z field terms; these mutually commute.
  std::span<const PauliString> field_terms() const {
    return std::span(terms_).subspan(static_cast<std::size_t>(params_.n_sites));
  }

 private:
  ModelParams params_;
  std::vector<PauliString> terms_;
};

/// H = -J sum_{i<N} X_i X_{i+1} - J Y_1 P Y_N - lambda sum_i Z_i, P = prod_{1<i<N} Z_i.
HamiltonianTerms build_kitaev_ring(const ModelParams& params);

/// Dense sum of weighted Pauli strings. Throws std::length_error above `dense_cap` qubits.
Matrix dense_matrix(std::span<const PauliString> terms, int dense_cap = kDefaultDenseCap);
Matrix dense_matrix(const HamiltonianTerms& terms, int dense_cap = kDefaultDenseCap);
Matrix dense_matrix(const PauliString& term, int dense_cap = kDefaultDenseCap);

/// X_i X_j with 1-based site indices; the identity string when i == j.
PauliString build_observable_xx(int n_sites, int i, int j);

}  // namespace qcrit
