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

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "test_support.hpp"

namespace qcrit {
namespace {

using std::numbers::pi;
using testing_support::random_params;

RealVector filled(int n, double v) { return RealVector::Constant(n, v); }

TEST(AnsatzParams, FlatLayoutRoundTrip) {
  std::mt19937_64 rng(10);
  const AnsatzParams a = random_params(3, 2, rng);
  EXPECT_EQ(a.parameter_count(), 15u);
  EXPECT_EQ(a.alpha_index(1, 2), 3u + 3u + 2u);
  EXPECT_EQ(a.eta_index(0, 0), 3u + 6u);
  const AnsatzParams b = AnsatzParams::from_flat(3, 2, a.flatten());
  EXPECT_EQ(b.flatten(), a.flatten());
  EXPECT_THROW(AnsatzParams::from_flat(3, 2, RealVector::Zero(14)), std::invalid_argument);
}

TEST(InitialState, Examples) {
  EXPECT_LT((initial_state(filled(3, pi / 4)).matrix() - DensityMatrix::maximally_mixed(3).matrix()).norm(),
            1e-15);
  EXPECT_LT((initial_state(filled(3, 0.0)).matrix() - DensityMatrix::basis_state(3, 7).matrix()).norm(),
            1e-15);
  const Matrix m = initial_state(filled(1, pi / 6)).matrix();
  EXPECT_NEAR(m(0, 0).real(), 0.25, 1e-15);
  EXPECT_NEAR(m(1, 1).real(), 0.75, 1e-15);
}

TEST(SpectrumEntropy, Examples) {
  EXPECT_NEAR(spectrum_entropy(filled(3, pi / 4)), 3.0 * std::log(2.0), 1e-14);
  EXPECT_EQ(spectrum_entropy(filled(3, 0.0)), 0.0);
  EXPECT_NEAR(spectrum_entropy(filled(1, pi / 6)), 0.56233514461880829, 1e-12);
}

TEST(ApplyCircuit, ZeroAnglesLeaveStateUnchanged) {
  std::mt19937_64 rng(11);
  const HamiltonianTerms terms = build_kitaev_ring({3, 1.0, 0.9});
  const DensityMatrix rho = testing_support::random_density(3, rng);
  const DensityMatrix out = apply_circuit(rho, AnsatzParams::zeros(3, 2), terms);
  EXPECT_LT((out.matrix() - rho.matrix()).norm(), 1e-15);
}

TEST(ApplyCircuit, FieldGatesActTriviallyOnBasisStates) {
  const HamiltonianTerms terms = build_kitaev_ring({3, 1.0, 0.9});
  AnsatzParams a = AnsatzParams::zeros(3, 1);
  a.alpha().setConstant(pi / 2);
  const DensityMatrix in = DensityMatrix::basis_state(3, 7);
  EXPECT_LT((apply_circuit(in, a, terms).matrix() - in.matrix()).norm(), 1e-14);
}

TEST(ApplyCircuit, GateOrderIsFieldsThenHoppingPerBlock) {
  const HamiltonianTerms terms = build_kitaev_ring({3, 1.0, 0.9});
  const std::vector<CircuitGate> gates = circuit_gates(AnsatzParams::zeros(3, 2), terms);
  ASSERT_EQ(gates.size(), 12u);
  EXPECT_EQ(gates[0].generator.str(), "ZII");
  EXPECT_EQ(gates[3].generator.str(), "XXI");
  EXPECT_EQ(gates[5].generator.str(), "YZY");
  EXPECT_DOUBLE_EQ(gates[5].generator.coefficient(), 1.0);
  EXPECT_EQ(gates[6].parameter_index, 3u + 3u);
}

TEST(VariationalState, MixedSpectrumIsInvariant) {
  std::mt19937_64 rng(12);
  const HamiltonianTerms terms = build_kitaev_ring({3, 1.0, 0.9});
  AnsatzParams a = random_params(3, 3, rng);
  a.theta().setConstant(pi / 4);
  EXPECT_LT((variational_state(a, terms).matrix() - DensityMatrix::maximally_mixed(3).matrix()).norm(),
            1e-14);
}

TEST(VariationalState, AllZeroIsAllOnes) {
  const HamiltonianTerms terms = build_kitaev_ring({2, 1.0, 0.5});
  EXPECT_LT((variational_state(AnsatzParams::zeros(2, 3), terms).matrix() -
             DensityMatrix::basis_state(2, 3).matrix())
                .norm(),
            1e-15);
}

}  // namespace
}  // namespace qcrit
