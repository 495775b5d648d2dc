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
#include <vector>

#include "qcrit/pauli_string.hpp"
#include "qcrit/types.hpp"

namespace qcrit {

/// Dense 2^N x 2^N density matrix. Construction only checks the shape; call
/// validate() where the physical invariants have to be enforced.
class DensityMatrix {
 public:
  explicit DensityMatrix(Matrix data);

  static DensityMatrix maximally_mixed(int qubit_count);
  static DensityMatrix basis_state(int qubit_count, std::uint64_t index);
  static DensityMatrix pure(const Eigen::VectorXcd& amplitudes);

  int qubit_count() const { return qubit_count_; }
  Eigen::Index dim() const { return data_.rows(); }
  const Matrix& matrix() const { return data_; }
  Matrix& matrix() { return data_; }

  /// Hermitian, unit trace and PSD, each within `tol`. Throws std::domain_error.
  void validate(double tol = 1e-10) const;
  bool is_valid(double tol = 1e-10) const;

 private:
  int qubit_count_ = 0;
  Matrix data_;
};

struct SpectralDecomposition {
  RealVector eigenvalues;  // ascending
  Matrix eigenvectors;     // columns

  double gap() const { return eigenvalues.size() > 1 ? eigenvalues[1] - eigenvalues[0] : 0.0; }
  Matrix reconstruct() const;
};

/// Largest elementwise |m - m^dagger|.
double hermiticity_error(const Matrix& m);

SpectralDecomposition eig_hermitian(const Matrix& m);

/// exp(scale * m) through the eigendecomposition of m.
Matrix matrix_exp_hermitian(const Matrix& m, Complex scale);
Matrix matrix_exp_hermitian(const SpectralDecomposition& spectral, Complex scale);

/// Precomputed bit action of a Pauli string: P|b> = phase * sign[b] |b ^ flip>.
class PauliAction {
 public:
  explicit PauliAction(const PauliString& p);

  int qubit_count() const { return qubit_count_; }
  Eigen::Index flip() const { return flip_; }
  Complex phase() const { return phase_; }
  /// +1 or -1 per basis index.
  const std::vector<double>& signs() const { return signs_; }

 private:
  int qubit_count_ = 0;
  Eigen::Index flip_ = 0;
  Complex phase_;
  std::vector<double> signs_;
};

/// In-place m <- G m G^dagger with G = cos(angle) I - i sin(angle) P.
/// `scratch` is resized as needed and reused across calls.
void conjugate_by_pauli_exp(Matrix& m, const PauliAction& p, double angle, Matrix& scratch);
void conjugate_by_pauli_exp(Matrix& m, const PauliString& p, double angle, Matrix& scratch);

/// Tr[h (rho P - P rho)] for Hermitian h and rho; the result is purely imaginary.
Complex commutator_trace(const Matrix& h, const Matrix& rho, const PauliAction& p);
Complex commutator_trace(const Matrix& h, const Matrix& rho, const PauliString& p);

// State batches: row b of a batch holds the amplitudes of state b, so a gate
// touches whole columns.

/// Applies exp(-i angle P) to every state in the batch.
void rotate_batch(Matrix& batch, const PauliAction& p, double angle, Eigen::VectorXcd& scratch);
/// out += coefficient * P applied to every state in the batch.
void accumulate_pauli(Matrix& out, const Matrix& batch, const PauliAction& p, double coefficient);
/// sum_b <bra_b| P |ket_b>.
Complex batch_pauli_overlap(const Matrix& bra, const Matrix& ket, const PauliAction& p);

/// Tr[rho P] for a coefficient-free Pauli string.
Complex pauli_trace(const Matrix& rho, const PauliString& p);

/// Tr[a b] without forming the product.
Complex trace_of_product(const Matrix& a, const Matrix& b);

DensityMatrix apply_pauli_exp(const DensityMatrix& state, const PauliString& p, double angle);

/// Tr[rho O]; throws std::runtime_error if the imaginary part exceeds 1e-10.
double expectation(const DensityMatrix& state, const Matrix& observable);

/// Natural-log entropy of the eigenvalue distribution.
double von_neumann_entropy(const DensityMatrix& state);

/// Uhlmann fidelity (Tr sqrt(sqrt(a) b sqrt(a)))^2.
double fidelity_diagnostic(const DensityMatrix& a, const DensityMatrix& b);

}  // namespace qcrit
