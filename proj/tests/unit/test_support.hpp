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

#include <random>
#include <vector>

#include "qcrit/ansatz.hpp"
#include "qcrit/dense_backend.hpp"
#include "qcrit/pauli_string.hpp"

namespace qcrit::testing_support {

// Wishart draw: G G^dagger / Tr, full rank with probability one.
inline DensityMatrix random_density(int n, std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  const Eigen::Index dim = Eigen::Index{1} << n;
  Matrix m(dim, dim);
  for (Eigen::Index i = 0; i < dim; ++i) {
    for (Eigen::Index j = 0; j < dim; ++j) m(i, j) = Complex(g(rng), g(rng));
  }
  Matrix rho = m * m.adjoint();
  rho /= rho.trace().real();
  return DensityMatrix(rho);
}

// Non-identity string.
inline PauliString random_pauli(int n, std::mt19937_64& rng) {
  std::uniform_int_distribution<int> letter(0, 3);
  std::vector<Pauli> letters(static_cast<std::size_t>(n));
  do {
    for (Pauli& l : letters) l = static_cast<Pauli>(letter(rng));
  } while (PauliString(letters).is_identity());
  return PauliString(letters);
}

inline AnsatzParams random_params(int n, int p, std::mt19937_64& rng, double spread = 3.0) {
  std::uniform_real_distribution<double> u(-spread, spread);
  RealVector flat(n * (2 * p + 1));
  for (Eigen::Index k = 0; k < flat.size(); ++k) flat[k] = u(rng);
  return AnsatzParams::from_flat(n, p, flat);
}

}  // namespace qcrit::testing_support
