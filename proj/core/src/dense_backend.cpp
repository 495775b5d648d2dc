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

#include "qcrit/dense_backend.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <stdexcept>
#include <string>

#include <Eigen/Eigenvalues>

namespace qcrit {
namespace {

constexpr double kHermitianTol = 1e-10;

int log2_dim(Eigen::Index dim) {
  if (dim < 1 || (dim & (dim - 1)) != 0) {
    throw std::invalid_argument("matrix dimension " + std::to_string(dim) +
                                " is not a power of two");
  }
  return std::countr_zero(static_cast<std::uint64_t>(dim));
}

void require_hermitian(const Matrix& m, const char* where) {
  if (m.rows() != m.cols()) throw std::invalid_argument(std::string(where) + ": matrix not square");
  const double err = hermiticity_error(m);
  if (err > kHermitianTol) {
    throw std::invalid_argument(std::string(where) + ": input not Hermitian (deviation " +
                                std::to_string(err) + ")");
  }
}

// +1/-1 per basis index from the Z-type support of p.
std::vector<double> sign_table(const PauliString& p, Eigen::Index dim) {
  const std::uint64_t z = p.z_mask();
  std::vector<double> sgn(static_cast<std::size_t>(dim));
  for (Eigen::Index b = 0; b < dim; ++b) {
    sgn[static_cast<std::size_t>(b)] =
        (std::popcount(static_cast<std::uint64_t>(b) & z) & 1) ? -1.0 : 1.0;
  }
  return sgn;
}

Complex i_power(int k) {
  static constexpr Complex kPowers[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
  return kPowers[k & 3];
}

}  // namespace

DensityMatrix::DensityMatrix(Matrix data) : data_(std::move(data)) {
  if (data_.rows() != data_.cols()) throw std::invalid_argument("density matrix must be square");
  qubit_count_ = log2_dim(data_.rows());
}

DensityMatrix DensityMatrix::maximally_mixed(int qubit_count) {
  const Eigen::Index dim = Eigen::Index{1} << qubit_count;
  return DensityMatrix(Matrix::Identity(dim, dim) / static_cast<double>(dim));
}

DensityMatrix DensityMatrix::basis_state(int qubit_count, std::uint64_t index) {
  const Eigen::Index dim = Eigen::Index{1} << qubit_count;
  if (static_cast<Eigen::Index>(index) >= dim) throw std::out_of_range("basis index out of range");
  Matrix m = Matrix::Zero(dim, dim);
  m(static_cast<Eigen::Index>(index), static_cast<Eigen::Index>(index)) = 1.0;
  return DensityMatrix(std::move(m));
}

DensityMatrix DensityMatrix::pure(const Eigen::VectorXcd& amplitudes) {
  const double norm = amplitudes.norm();
  if (norm == 0.0) throw std::invalid_argument("pure state with zero norm");
  Eigen::VectorXcd v = amplitudes / norm;
  return DensityMatrix(v * v.adjoint());
}

void DensityMatrix::validate(double tol) const {
  const double herm = hermiticity_error(data_);
  if (herm > tol) {
    throw std::domain_error("density matrix not Hermitian (deviation " + std::to_string(herm) + ")");
  }
  const Complex tr = data_.trace();
  if (std::abs(tr - 1.0) > tol) {
    throw std::domain_error("density matrix trace " + std::to_string(tr.real()) + " != 1");
  }
  Eigen::SelfAdjointEigenSolver<Matrix> es(data_, Eigen::EigenvaluesOnly);
  if (es.eigenvalues().minCoeff() < -tol) {
    throw std::domain_error("density matrix has negative eigenvalue " +
                            std::to_string(es.eigenvalues().minCoeff()));
  }
}

bool DensityMatrix::is_valid(double tol) const {
  try {
    validate(tol);
  } catch (const std::domain_error&) {
    return false;
  }
  return true;
}

Matrix SpectralDecomposition::reconstruct() const {
  return eigenvectors * eigenvalues.cast<Complex>().asDiagonal() * eigenvectors.adjoint();
}

double hermiticity_error(const Matrix& m) {
  if (m.rows() != m.cols()) return std::numeric_limits<double>::infinity();
  return (m - m.adjoint()).cwiseAbs().maxCoeff();
}

SpectralDecomposition eig_hermitian(const Matrix& m) {
  require_hermitian(m, "eig_hermitian");
  // Symmetrize so the solver sees an exactly Hermitian input.
  Matrix sym = 0.5 * (m + m.adjoint());
  Eigen::SelfAdjointEigenSolver<Matrix> es(sym);
  if (es.info() != Eigen::Success) throw std::runtime_error("eig_hermitian: solver failed");
  return {es.eigenvalues(), es.eigenvectors()};
}

Matrix matrix_exp_hermitian(const SpectralDecomposition& spectral, Complex scale) {
  Eigen::VectorXcd factors(spectral.eigenvalues.size());
  for (Eigen::Index k = 0; k < factors.size(); ++k) {
    factors[k] = std::exp(scale * spectral.eigenvalues[k]);
  }
  return spectral.eigenvectors * factors.asDiagonal() * spectral.eigenvectors.adjoint();
}

Matrix matrix_exp_hermitian(const Matrix& m, Complex scale) {
  return matrix_exp_hermitian(eig_hermitian(m), scale);
}

PauliAction::PauliAction(const PauliString& p)
    : qubit_count_(p.qubit_count()),
      flip_(static_cast<Eigen::Index>(p.x_mask())),
      phase_(i_power(p.y_count())),
      signs_(sign_table(p, Eigen::Index{1} << p.qubit_count())) {}

void conjugate_by_pauli_exp(Matrix& m, const PauliAction& p, double angle, Matrix& scratch) {
  const Eigen::Index dim = m.rows();
  if (dim != (Eigen::Index{1} << p.qubit_count())) {
    throw std::invalid_argument("conjugate_by_pauli_exp: qubit count mismatch");
  }
  const double c = std::cos(angle);
  const double s = std::sin(angle);
  const Eigen::Index x = p.flip();
  const double* sgn = p.signs().data();
  // P_{a, a^x} = g * sgn[a^x] and g^2 = +-1 is real.
  const Complex g = p.phase();
  const double g2 = (g * g).real();
  const Complex ics_g = Complex(0.0, c * s) * g;
  const double cc = c * c;
  const double ss_g2 = s * s * g2;

  scratch.resize(dim, dim);
  for (Eigen::Index b = 0; b < dim; ++b) {
    const Eigen::Index bx = b ^ x;
    const double sb = sgn[b];
    const Complex* col = &m(0, b);
    const Complex* colx = &m(0, bx);
    Complex* out = &scratch(0, b);
    const Complex right = ics_g * sb;
    for (Eigen::Index a = 0; a < dim; ++a) {
      const Eigen::Index ax = a ^ x;
      const double sax = sgn[ax];
      out[a] = cc * col[a] + (ss_g2 * sax * sb) * colx[ax] - (ics_g * sax) * col[ax] +
               right * colx[a];
    }
  }
  m.swap(scratch);
}

void conjugate_by_pauli_exp(Matrix& m, const PauliString& p, double angle, Matrix& scratch) {
  conjugate_by_pauli_exp(m, PauliAction(p), angle, scratch);
}

Complex commutator_trace(const Matrix& h, const Matrix& rho, const PauliAction& p) {
  const Eigen::Index dim = rho.rows();
  const Eigen::Index x = p.flip();
  const double* sgn = p.signs().data();
  // sum_ab h_ba (rho_{a,b^x} w(b) - w(a^x) rho_{a^x,b}), using h_ba = conj(h_ab).
  Complex acc = 0.0;
  for (Eigen::Index b = 0; b < dim; ++b) {
    const Eigen::Index bx = b ^ x;
    const double sb = sgn[b];
    const Complex* hcol = &h(0, b);
    const Complex* rcol = &rho(0, b);
    const Complex* rcolx = &rho(0, bx);
    for (Eigen::Index a = 0; a < dim; ++a) {
      const Eigen::Index ax = a ^ x;
      acc += std::conj(hcol[a]) * (rcolx[a] * sb - sgn[ax] * rcol[ax]);
    }
  }
  return p.phase() * acc;
}

Complex commutator_trace(const Matrix& h, const Matrix& rho, const PauliString& p) {
  return commutator_trace(h, rho, PauliAction(p));
}

void rotate_batch(Matrix& batch, const PauliAction& p, double angle, Eigen::VectorXcd& scratch) {
  const Eigen::Index dim = batch.cols();
  if (dim != (Eigen::Index{1} << p.qubit_count())) {
    throw std::invalid_argument("rotate_batch: qubit count mismatch");
  }
  const double c = std::cos(angle);
  const Complex k = Complex(0.0, -std::sin(angle)) * p.phase();
  const Eigen::Index x = p.flip();
  const double* sgn = p.signs().data();
  if (x == 0) {
    for (Eigen::Index a = 0; a < dim; ++a) batch.col(a) *= c + k * sgn[a];
    return;
  }
  for (Eigen::Index a = 0; a < dim; ++a) {
    const Eigen::Index ax = a ^ x;
    if (ax < a) continue;
    scratch = batch.col(a);
    batch.col(a) = c * batch.col(a) + (k * sgn[ax]) * batch.col(ax);
    batch.col(ax) = c * batch.col(ax) + (k * sgn[a]) * scratch;
  }
}

void accumulate_pauli(Matrix& out, const Matrix& batch, const PauliAction& p, double coefficient) {
  const Eigen::Index x = p.flip();
  const double* sgn = p.signs().data();
  const Complex g = coefficient * p.phase();
  for (Eigen::Index a = 0; a < batch.cols(); ++a) {
    out.col(a) += (g * sgn[a ^ x]) * batch.col(a ^ x);
  }
}

Complex batch_pauli_overlap(const Matrix& bra, const Matrix& ket, const PauliAction& p) {
  const Eigen::Index x = p.flip();
  const double* sgn = p.signs().data();
  Complex acc = 0.0;
  for (Eigen::Index a = 0; a < ket.cols(); ++a) {
    acc += sgn[a ^ x] * bra.col(a).dot(ket.col(a ^ x));
  }
  return p.phase() * acc;
}

Complex pauli_trace(const Matrix& rho, const PauliString& p) {
  const Eigen::Index dim = rho.rows();
  if (dim != (Eigen::Index{1} << p.qubit_count())) {
    throw std::invalid_argument("pauli_trace: qubit count mismatch");
  }
  const auto x = static_cast<Eigen::Index>(p.x_mask());
  const std::uint64_t z = p.z_mask();
  // Tr[rho P] = sum_b rho_{b, b^x} P_{b^x, b}, and P_{b^x, b} = w(b).
  Complex acc = 0.0;
  for (Eigen::Index b = 0; b < dim; ++b) {
    const double sb = (std::popcount(static_cast<std::uint64_t>(b) & z) & 1) ? -1.0 : 1.0;
    acc += rho(b, b ^ x) * sb;
  }
  return i_power(p.y_count()) * acc;
}

Complex trace_of_product(const Matrix& a, const Matrix& b) {
  return (a.transpose().cwiseProduct(b)).sum();
}

DensityMatrix apply_pauli_exp(const DensityMatrix& state, const PauliString& p, double angle) {
  if (p.qubit_count() != state.qubit_count()) {
    throw std::invalid_argument("apply_pauli_exp: string has " + std::to_string(p.qubit_count()) +
                                " qubits, state has " + std::to_string(state.qubit_count()));
  }
  if (p.coefficient() != 1.0) {
    throw std::invalid_argument("apply_pauli_exp: Pauli string must carry coefficient 1");
  }
  if (!std::isfinite(angle)) throw std::invalid_argument("apply_pauli_exp: angle not finite");
  Matrix m = state.matrix();
  Matrix scratch;
  conjugate_by_pauli_exp(m, p, angle, scratch);
  return DensityMatrix(std::move(m));
}

double expectation(const DensityMatrix& state, const Matrix& observable) {
  if (observable.rows() != state.dim() || observable.cols() != state.dim()) {
    throw std::invalid_argument("expectation: dimension mismatch");
  }
  const Complex value = trace_of_product(state.matrix(), observable);
  if (std::abs(value.imag()) > 1e-10) {
    throw std::runtime_error("expectation: imaginary part " + std::to_string(value.imag()) +
                             " signals a corrupted state");
  }
  return value.real();
}

double von_neumann_entropy(const DensityMatrix& state) {
  require_hermitian(state.matrix(), "von_neumann_entropy");
  Eigen::SelfAdjointEigenSolver<Matrix> es(0.5 * (state.matrix() + state.matrix().adjoint()),
                                           Eigen::EigenvaluesOnly);
  double s = 0.0;
  for (Eigen::Index k = 0; k < es.eigenvalues().size(); ++k) {
    const double lambda = es.eigenvalues()[k];
    if (lambda < -1e-8) {
      throw std::domain_error("von_neumann_entropy: eigenvalue " + std::to_string(lambda) +
                              " below -1e-8");
    }
    if (lambda > 0.0) s -= lambda * std::log(lambda);
  }
  return s;
}

double fidelity_diagnostic(const DensityMatrix& a, const DensityMatrix& b) {
  if (a.dim() != b.dim()) throw std::invalid_argument("fidelity_diagnostic: dimension mismatch");
  a.validate(1e-8);
  b.validate(1e-8);
  SpectralDecomposition ea = eig_hermitian(0.5 * (a.matrix() + a.matrix().adjoint()));
  Eigen::VectorXcd roots(ea.eigenvalues.size());
  for (Eigen::Index k = 0; k < roots.size(); ++k) {
    roots[k] = std::sqrt(std::max(ea.eigenvalues[k], 0.0));
  }
  const Matrix sqrt_a = ea.eigenvectors * roots.asDiagonal() * ea.eigenvectors.adjoint();
  Matrix inner = sqrt_a * b.matrix() * sqrt_a;
  inner = 0.5 * (inner + inner.adjoint());
  Eigen::SelfAdjointEigenSolver<Matrix> es(inner, Eigen::EigenvaluesOnly);
  double tr = 0.0;
  for (Eigen::Index k = 0; k < es.eigenvalues().size(); ++k) {
    tr += std::sqrt(std::max(es.eigenvalues()[k], 0.0));
  }
  return tr * tr;
}

}  // namespace qcrit
