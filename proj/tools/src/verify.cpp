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

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include "qcrit/ansatz.hpp"
#include "qcrit/correlations.hpp"
#include "qcrit/dense_backend.hpp"
#include "qcrit/gibbs_vqa.hpp"
#include "qcrit_app/runner.hpp"

namespace qcrit::app {
namespace {

AnsatzParams random_params(int n, int p, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> theta(0.05, std::numbers::pi / 2 - 0.05);
  std::uniform_real_distribution<double> angle(-std::numbers::pi, std::numbers::pi);
  AnsatzParams params = AnsatzParams::zeros(n, p);
  for (int i = 0; i < n; ++i) params.theta()[i] = theta(rng);
  for (int l = 0; l < p; ++l) {
    for (int i = 0; i < n; ++i) {
      params.alpha()(l, i) = angle(rng);
      params.eta()(l, i) = angle(rng);
    }
  }
  return params;
}

DensityMatrix random_state(int n, std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  const Eigen::Index dim = Eigen::Index{1} << n;
  Matrix a(dim, dim);
  for (Eigen::Index i = 0; i < dim; ++i) {
    for (Eigen::Index j = 0; j < dim; ++j) a(i, j) = Complex(g(rng), g(rng));
  }
  Matrix rho = a * a.adjoint();
  rho /= rho.trace();
  return DensityMatrix(std::move(rho));
}

void record(VerifyCheck& check, double error) {
  ++check.total;
  check.worst = std::max(check.worst, error);
  if (error <= check.tolerance) ++check.passed;
}

}  // namespace

std::vector<VerifyCheck> run_verify_suite(const RunConfig& config, std::uint64_t seed) {
  const ModelParams model{config.n_sites, config.coupling_j, config.lambdas.front()};
  const HamiltonianTerms terms = build_kitaev_ring(model);
  const double temperature = config.temperatures.front();
  const int n = config.n_sites;
  const int p = config.blocks_p;
  std::mt19937_64 rng(seed);

  VerifyCheck grad{"gradient_vs_central_differences", 0, 0, 0.0, 1e-6};
  FreeEnergyObjective objective(terms, temperature, p);
  constexpr double kStep = 1e-5;
  for (int draw = 0; draw < 50; ++draw) {
    const RealVector x = random_params(n, p, rng).flatten();
    RealVector analytic;
    objective.value_and_gradient(x, analytic);
    double err = 0.0;
    for (Eigen::Index k = 0; k < x.size(); ++k) {
      RealVector hi = x;
      RealVector lo = x;
      hi[k] += kStep;
      lo[k] -= kStep;
      const double fd =
          (objective.value(hi).free_energy - objective.value(lo).free_energy) / (2.0 * kStep);
      err = std::max(err, std::abs(fd - analytic[k]));
    }
    record(grad, err / std::max(analytic.lpNorm<Eigen::Infinity>(), 1e-8));
  }

  VerifyCheck hadamard{"hadamard_vs_direct", 0, 0, 0.0, 1e-10};
  const Propagator evolution(model);
  std::uniform_int_distribution<int> site(1, n);
  std::uniform_real_distribution<double> time(0.0, 3.0);
  for (int draw = 0; draw < 50; ++draw) {
    const DensityMatrix state = random_state(n, rng);
    const int i = site(rng);
    const double t = time(rng);
    record(hadamard, std::abs(dynamical_correlation_hadamard(state, evolution, i, t) -
                              dynamical_correlation_direct(state, evolution, i, t)));
  }

  VerifyCheck entropy{"entropy_invariance", 0, 0, 0.0, 1e-10};
  for (int draw = 0; draw < 20; ++draw) {
    const AnsatzParams params = random_params(n, p, rng);
    record(entropy, std::abs(von_neumann_entropy(variational_state(params, terms)) -
                             spectrum_entropy(params.theta())));
  }
  return {grad, hadamard, entropy};
}

}  // namespace qcrit::app
