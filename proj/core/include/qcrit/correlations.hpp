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
#include <stdexcept>
#include <string>
#include <vector>

#include "qcrit/dense_backend.hpp"
#include "qcrit/spin_model.hpp"

namespace qcrit {

/// R(n) = sum_i Tr[rho X_i X_{i+n}] with periodic wrap; 0 <= n <= N-1.
double static_correlation(const DensityMatrix& state, int spacing);

/// exp(-iHt) evaluated from a fixed spectral decomposition of H.
class Propagator {
 public:
  explicit Propagator(SpectralDecomposition spectral) : spectral_(std::move(spectral)) {}
  explicit Propagator(const ModelParams& model, int dense_cap = kDefaultDenseCap);

  int qubit_count() const;
  const SpectralDecomposition& spectral() const { return spectral_; }
  Matrix at(double t) const { return matrix_exp_hermitian(spectral_, Complex(0.0, -t)); }

 private:
  SpectralDecomposition spectral_;
};

/// Tr[rho X_i(t) X_i] with X_i(t) = e^{iHt} X_i e^{-iHt}; `site` is 1-based.
Complex dynamical_correlation_direct(const DensityMatrix& state, const Propagator& evolution,
                                     int site, double t);
Complex dynamical_correlation_direct(const DensityMatrix& state, const ModelParams& model, int site,
                                     double t);

struct HadamardTestResult {
  Complex value;         // <X> + i<Y> on the ancilla
  Matrix ancilla_state;  // 2x2 reduced state before measurement
};

/// Emulates the ancilla interferometer on N+1 qubits (ancilla = qubit 0):
/// H on the ancilla, controlled-X_i, then e^{-iHt}, controlled-X_i, e^{iHt} on the system.
HadamardTestResult hadamard_test(const DensityMatrix& state, const Propagator& evolution, int site,
                                 double t);
Complex dynamical_correlation_hadamard(const DensityMatrix& state, const Propagator& evolution,
                                       int site, double t);
Complex dynamical_correlation_hadamard(const DensityMatrix& state, const ModelParams& model,
                                       int site, double t);

/// C(t) = sum_i |Tr[rho X_i(t) X_i]|.
double aggregate_C(const DensityMatrix& state, const Propagator& evolution, double t);
double aggregate_C(const DensityMatrix& state, const ModelParams& model, double t);

enum class FitKind { Spatial, Temporal };

struct CorrelationFit {
  FitKind kind = FitKind::Spatial;
  std::vector<double> abscissae;
  std::vector<double> ordinates;
  double amplitude = 0.0;
  double length_scale = 0.0;  // +inf when degenerate
  double residual = 0.0;      // RMS in the log domain
  bool degenerate = false;    // |slope| < 1e-12
};

class FitError : public std::runtime_error {
 public:
  FitError(const std::string& what, double abscissa)
      : std::runtime_error(what), abscissa_(abscissa) {}
  double abscissa() const { return abscissa_; }

 private:
  double abscissa_;
};

/// Least squares of ln y = ln a - x / L. Throws FitError on y <= 0 (naming the
/// offending abscissa) or on growing data.
CorrelationFit fit_exponential(std::span<const double> xs, std::span<const double> ys,
                               FitKind kind = FitKind::Spatial);

class WindowTooShort : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Smallest magnitude kept in log-domain fits.
inline constexpr double kFitFloor = 1e-12;

/// Length of the longest prefix of `values` that is strictly decreasing and
/// above kFitFloor. Throws WindowTooShort when that prefix has fewer than 4 points.
std::size_t fit_window_length(std::span<const double> values);

/// Evaluates C(t) on an ascending grid and returns the monotone prefix of the grid.
std::vector<double> fit_window_C(const DensityMatrix& state, const Propagator& evolution,
                                 std::span<const double> t_grid);

struct PeakLocation {
  std::size_t index = 0;     // grid argmax
  double refined = 0.0;      // parabolic vertex through the peak and its neighbours
  bool boundary = false;     // argmax at a grid endpoint (no refinement)
};

/// Argmax over finite values with three-point parabolic refinement.
PeakLocation locate_peak(std::span<const double> xs, std::span<const double> ys);

}  // namespace qcrit
