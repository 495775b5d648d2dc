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

#include "qcrit/correlations.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>

namespace qcrit {

double static_correlation(const DensityMatrix& state, int spacing) {
  const int n = state.qubit_count();
  if (spacing < 0 || spacing > n - 1) {
    throw std::out_of_range("static_correlation: spacing " + std::to_string(spacing) +
                            " outside 0.." + std::to_string(n - 1));
  }
  double total = 0.0;
  for (int i = 1; i <= n; ++i) {
    const int j = (i + spacing - 1) % n + 1;
    total += pauli_trace(state.matrix(), build_observable_xx(n, i, j)).real();
  }
  return total;
}

Propagator::Propagator(const ModelParams& model, int dense_cap)
    : spectral_(eig_hermitian(dense_matrix(build_kitaev_ring(model), dense_cap))) {}

int Propagator::qubit_count() const {
  return std::countr_zero(static_cast<std::uint64_t>(spectral_.eigenvalues.size()));
}

namespace {

void check_site(int site, int n) {
  if (site < 1 || site > n) {
    throw std::out_of_range("site " + std::to_string(site) + " outside 1.." + std::to_string(n));
  }
}

PauliString single_x(int n, int site) {
  std::vector<Pauli> letters(static_cast<std::size_t>(n), Pauli::I);
  letters[static_cast<std::size_t>(site - 1)] = Pauli::X;
  return PauliString(std::move(letters));
}

// M X for a Pauli X string: column b of the product is column b ^ x of M.
Matrix times_flip(const Matrix& m, Eigen::Index x) {
  Matrix out(m.rows(), m.cols());
  for (Eigen::Index b = 0; b < m.cols(); ++b) out.col(b) = m.col(b ^ x);
  return out;
}

// X M: row a of the product is row a ^ x of M.
Matrix flip_times(const Matrix& m, Eigen::Index x) {
  Matrix out(m.rows(), m.cols());
  for (Eigen::Index a = 0; a < m.rows(); ++a) out.row(a) = m.row(a ^ x);
  return out;
}

Complex direct_with(const DensityMatrix& state, const Matrix& u, int site) {
  const int n = state.qubit_count();
  const auto x = static_cast<Eigen::Index>(single_x(n, site).x_mask());
  // X_i(t) X_i = U^dagger X_i U X_i
  const Matrix heis = u.adjoint() * flip_times(u, x);
  return trace_of_product(state.matrix(), times_flip(heis, x));
}

}  // namespace

Complex dynamical_correlation_direct(const DensityMatrix& state, const Propagator& evolution,
                                     int site, double t) {
  if (evolution.qubit_count() != state.qubit_count()) {
    throw std::invalid_argument("dynamical_correlation_direct: qubit count mismatch");
  }
  check_site(site, state.qubit_count());
  if (!std::isfinite(t)) throw std::invalid_argument("time must be finite");
  return direct_with(state, evolution.at(t), site);
}

Complex dynamical_correlation_direct(const DensityMatrix& state, const ModelParams& model, int site,
                                     double t) {
  return dynamical_correlation_direct(state, Propagator(model), site, t);
}

HadamardTestResult hadamard_test(const DensityMatrix& state, const Propagator& evolution, int site,
                                 double t) {
  const int n = state.qubit_count();
  if (evolution.qubit_count() != n) throw std::invalid_argument("hadamard_test: qubit count mismatch");
  check_site(site, n);
  if (n + 1 > kDefaultDenseCap) throw std::length_error("hadamard_test: N + 1 exceeds dense cap");
  if (!std::isfinite(t)) throw std::invalid_argument("time must be finite");

  const Eigen::Index sys = state.dim();
  const Eigen::Index dim = 2 * sys;
  // Ancilla is the most significant bit.
  Matrix rho = Matrix::Zero(dim, dim);
  rho.topLeftCorner(sys, sys) = state.matrix();

  auto apply = [&rho](const Matrix& g) { rho = g * rho * g.adjoint(); };

  Matrix hadamard(dim, dim);
  const double r = 1.0 / std::sqrt(2.0);
  const Matrix id = Matrix::Identity(sys, sys);
  hadamard << r * id, r * id, r * id, -r * id;

  const auto x = static_cast<Eigen::Index>(single_x(n, site).x_mask());
  Matrix controlled_x = Matrix::Zero(dim, dim);
  for (Eigen::Index b = 0; b < sys; ++b) {
    controlled_x(b, b) = 1.0;
    controlled_x(sys + (b ^ x), sys + b) = 1.0;
  }

  const Matrix u = evolution.at(t);
  Matrix evolve = Matrix::Zero(dim, dim);
  evolve.topLeftCorner(sys, sys) = u;
  evolve.bottomRightCorner(sys, sys) = u;

  apply(hadamard);
  apply(controlled_x);
  // evolve - control - unevolve realizes controlled-X_i(t)
  apply(evolve);
  apply(controlled_x);
  apply(evolve.adjoint());

  HadamardTestResult out;
  out.ancilla_state.resize(2, 2);
  for (int a = 0; a < 2; ++a) {
    for (int b = 0; b < 2; ++b) {
      out.ancilla_state(a, b) = rho.block(a * sys, b * sys, sys, sys).trace();
    }
  }
  // <X> + i<Y> = 2 rho_anc(1, 0)
  out.value = 2.0 * out.ancilla_state(1, 0);
  return out;
}

Complex dynamical_correlation_hadamard(const DensityMatrix& state, const Propagator& evolution,
                                       int site, double t) {
  return hadamard_test(state, evolution, site, t).value;
}

Complex dynamical_correlation_hadamard(const DensityMatrix& state, const ModelParams& model,
                                       int site, double t) {
  return dynamical_correlation_hadamard(state, Propagator(model), site, t);
}

double aggregate_C(const DensityMatrix& state, const Propagator& evolution, double t) {
  if (evolution.qubit_count() != state.qubit_count()) {
    throw std::invalid_argument("aggregate_C: qubit count mismatch");
  }
  const Matrix u = evolution.at(t);
  double total = 0.0;
  for (int i = 1; i <= state.qubit_count(); ++i) total += std::abs(direct_with(state, u, i));
  return total;
}

double aggregate_C(const DensityMatrix& state, const ModelParams& model, double t) {
  return aggregate_C(state, Propagator(model), t);
}

CorrelationFit fit_exponential(std::span<const double> xs, std::span<const double> ys,
                               FitKind kind) {
  if (xs.size() != ys.size()) throw std::invalid_argument("fit_exponential: size mismatch");
  if (xs.size() < 2) throw std::invalid_argument("fit_exponential: need at least 2 points");
  for (std::size_t k = 0; k < ys.size(); ++k) {
    if (!(ys[k] > 0.0)) {
      throw FitError("fit_exponential: non-positive ordinate at x = " + std::to_string(xs[k]), xs[k]);
    }
  }
  const auto m = static_cast<double>(xs.size());
  double mean_x = 0.0;
  double mean_l = 0.0;
  for (std::size_t k = 0; k < xs.size(); ++k) {
    mean_x += xs[k];
    mean_l += std::log(ys[k]);
  }
  mean_x /= m;
  mean_l /= m;
  double sxx = 0.0;
  double sxl = 0.0;
  for (std::size_t k = 0; k < xs.size(); ++k) {
    const double dx = xs[k] - mean_x;
    sxx += dx * dx;
    sxl += dx * (std::log(ys[k]) - mean_l);
  }
  if (sxx == 0.0) throw std::invalid_argument("fit_exponential: abscissae are all equal");
  const double slope = sxl / sxx;
  const double intercept = mean_l - slope * mean_x;

  CorrelationFit fit;
  fit.kind = kind;
  fit.abscissae.assign(xs.begin(), xs.end());
  fit.ordinates.assign(ys.begin(), ys.end());
  fit.amplitude = std::exp(intercept);
  double sq = 0.0;
  for (std::size_t k = 0; k < xs.size(); ++k) {
    const double r = std::log(ys[k]) - (intercept + slope * xs[k]);
    sq += r * r;
  }
  fit.residual = std::sqrt(sq / m);
  if (std::abs(slope) < 1e-12) {
    fit.degenerate = true;
    fit.length_scale = std::numeric_limits<double>::infinity();
  } else if (slope > 0.0) {
    throw FitError("fit_exponential: data grow with x (slope " + std::to_string(slope) + ")",
                   xs.back());
  } else {
    fit.length_scale = -1.0 / slope;
  }
  return fit;
}

std::size_t fit_window_length(std::span<const double> values) {
  std::size_t len = 0;
  while (len < values.size() && values[len] > kFitFloor &&
         (len == 0 || values[len] < values[len - 1])) {
    ++len;
  }
  if (len < 4) {
    throw WindowTooShort("fit window has " + std::to_string(len) +
                         " monotone points; at least 4 are required");
  }
  return len;
}

std::vector<double> fit_window_C(const DensityMatrix& state, const Propagator& evolution,
                                 std::span<const double> t_grid) {
  for (std::size_t k = 0; k < t_grid.size(); ++k) {
    if (k == 0 ? !(t_grid[0] > 0.0) : !(t_grid[k] > t_grid[k - 1])) {
      throw std::invalid_argument("fit_window_C: time grid must be ascending from a positive start");
    }
  }
  std::vector<double> values;
  values.reserve(t_grid.size());
  for (double t : t_grid) values.push_back(aggregate_C(state, evolution, t));
  const std::size_t len = fit_window_length(values);
  return {t_grid.begin(), t_grid.begin() + static_cast<std::ptrdiff_t>(len)};
}

PeakLocation locate_peak(std::span<const double> xs, std::span<const double> ys) {
  if (xs.size() != ys.size() || xs.empty()) throw std::invalid_argument("locate_peak: bad input");
  std::size_t best = xs.size();
  for (std::size_t k = 0; k < ys.size(); ++k) {
    if (std::isfinite(ys[k]) && (best == xs.size() || ys[k] > ys[best])) best = k;
  }
  if (best == xs.size()) throw std::invalid_argument("locate_peak: no finite values");
  PeakLocation peak;
  peak.index = best;
  peak.refined = xs[best];
  if (best == 0 || best + 1 == xs.size() || !std::isfinite(ys[best - 1]) ||
      !std::isfinite(ys[best + 1])) {
    peak.boundary = best == 0 || best + 1 == xs.size();
    return peak;
  }
  const double x0 = xs[best - 1], x1 = xs[best], x2 = xs[best + 1];
  const double y0 = ys[best - 1], y1 = ys[best], y2 = ys[best + 1];
  const double num = (x1 - x0) * (x1 - x0) * (y1 - y2) - (x1 - x2) * (x1 - x2) * (y1 - y0);
  const double den = (x1 - x0) * (y1 - y2) - (x1 - x2) * (y1 - y0);
  if (den != 0.0) {
    const double vertex = x1 - 0.5 * num / den;
    peak.refined = std::clamp(vertex, std::min(x0, x2), std::max(x0, x2));
  }
  return peak;
}

}  // namespace qcrit
