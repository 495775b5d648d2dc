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

#include <gtest/gtest.h>

#include <stdexcept>

#include "qcrit/dense_backend.hpp"

namespace qcrit {
namespace {

TEST(KitaevRing, ThreeSiteTerms) {
  const HamiltonianTerms h = build_kitaev_ring({3, 1.0, 0.7});
  ASSERT_EQ(h.terms().size(), 6u);
  const char* expected[] = {"XXI", "IXX", "YZY", "ZII", "IZI", "IIZ"};
  const double coeff[] = {-1.0, -1.0, -1.0, -0.7, -0.7, -0.7};
  for (std::size_t k = 0; k < 6; ++k) {
    EXPECT_EQ(h.terms()[k].str(), expected[k]);
    EXPECT_DOUBLE_EQ(h.terms()[k].coefficient(), coeff[k]);
  }
}

TEST(KitaevRing, TwoSiteBoundaryIsBareYY) {
  const HamiltonianTerms h = build_kitaev_ring({2, 1.0, 0.3});
  ASSERT_EQ(h.hopping_terms().size(), 2u);
  EXPECT_EQ(h.hopping_terms()[0].str(), "XX");
  EXPECT_EQ(h.hopping_terms()[1].str(), "YY");
  EXPECT_DOUBLE_EQ(h.hopping_terms()[1].coefficient(), -1.0);
}

TEST(KitaevRing, FourSitesHaveEightTracelessTerms) {
  const HamiltonianTerms h = build_kitaev_ring({4, 1.0, 1.0});
  EXPECT_EQ(h.terms().size(), 8u);
  for (const PauliString& t : h.terms()) {
    EXPECT_FALSE(t.is_identity());
    EXPECT_NEAR(std::abs(dense_matrix(t).trace()), 0.0, 1e-14);
  }
}

TEST(KitaevRing, RejectsInvalidModel) {
  EXPECT_THROW(build_kitaev_ring({1, 1.0, 0.5}), std::invalid_argument);
}

TEST(DenseMatrix, TwoSiteSpectrum) {
  const SpectralDecomposition s = eig_hermitian(dense_matrix(build_kitaev_ring({2, 1.0, 0.5})));
  ASSERT_EQ(s.eigenvalues.size(), 4);
  const double expected[] = {-2.0, -1.0, 1.0, 2.0};
  for (int k = 0; k < 4; ++k) EXPECT_NEAR(s.eigenvalues[k], expected[k], 1e-12);
}

TEST(DenseMatrix, SingleZ) {
  const Matrix z = dense_matrix(PauliString::parse("Z"));
  EXPECT_EQ(z(0, 0), Complex(1.0));
  EXPECT_EQ(z(1, 1), Complex(-1.0));
  EXPECT_EQ(z(0, 1), Complex(0.0));
}

TEST(DenseMatrix, ZeroFieldSpectrumIsSymmetric) {
  const RealVector e = eig_hermitian(dense_matrix(build_kitaev_ring({3, 1.0, 0.0}))).eigenvalues;
  for (Eigen::Index k = 0; k < e.size(); ++k) EXPECT_NEAR(e[k], -e[e.size() - 1 - k], 1e-12);
}

TEST(DenseMatrix, RespectsCap) {
  EXPECT_THROW(dense_matrix(build_kitaev_ring({5, 1.0, 1.0}), 4), std::length_error);
}

TEST(Observable, XX) {
  EXPECT_EQ(build_observable_xx(6, 1, 3).str(), "XIXIII");
  EXPECT_TRUE(build_observable_xx(6, 2, 2).is_identity());
  EXPECT_EQ(build_observable_xx(4, 1, 4).str(), "XIIX");
}

}  // namespace
}  // namespace qcrit
