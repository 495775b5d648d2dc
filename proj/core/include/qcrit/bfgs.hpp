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

#include <functional>
#include <string>
#include <vector>

#include "qcrit/types.hpp"

namespace qcrit {

/// Objective callback: returns f(x) and writes the gradient into `grad`.
using GradientObjective = std::function<double(const RealVector& x, RealVector& grad)>;

struct MinimizerOptions {
  double gradient_tolerance = 1e-9;  // on the Euclidean norm
  int max_iterations = 2000;
  bool record_trace = false;
  // Strong Wolfe constants.
  double armijo = 1e-4;
  double curvature = 0.9;
  int max_line_search_evaluations = 40;
  // Relative round-off band of f. Differences inside it are judged from
  // directional derivatives (approximate Wolfe) instead of values.
  double value_noise = 1e-13;
};

struct MinimizerTraceEntry {
  int iteration = 0;
  double value = 0.0;
  double gradient_norm = 0.0;
};

struct MinimizerResult {
  RealVector x;
  double value = 0.0;
  RealVector gradient;
  double gradient_norm = 0.0;
  int iterations = 0;
  int evaluations = 0;
  bool converged = false;
  std::string stop_reason;
  std::vector<MinimizerTraceEntry> trace;  // accepted iterates, including the start
};

/// BFGS on the inverse Hessian with a strong-Wolfe line search. Accepted
/// iterates never increase the objective by more than the noise band
/// value_noise * (1 + |f|); the returned point is the last accepted iterate.
MinimizerResult minimize_bfgs(const GradientObjective& objective, RealVector x0,
                              const MinimizerOptions& options = {});

}  // namespace qcrit
