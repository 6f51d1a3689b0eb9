// Copyright 2026 The chebham Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "chebham/cheb.hpp"
#include "chebham/verify.hpp"
#include "fixtures_n2.hpp"

using namespace chebham;
using Eigen::MatrixXd;
using Eigen::VectorXd;

namespace {

double max_abs(const MatrixXd& a, const MatrixXd& b) {
  EXPECT_EQ(a.rows(), b.rows());
  EXPECT_EQ(a.cols(), b.cols());
  return (a - b).cwiseAbs().maxCoeff();
}

}  // namespace

TEST(ChebFixtures, DerivativeMatrix) { EXPECT_LE(max_abs(build_G_T<double>(2), fixtures::G_T()), 1e-12); }

TEST(ChebFixtures, LiftingMatrices) {
  EXPECT_LE(max_abs(build_M_xp<double>(2, 0), fixtures::M_1()), 1e-12);
  EXPECT_LE(max_abs(build_M_xp<double>(2, 1), fixtures::M_x()), 1e-12);
  EXPECT_LE(max_abs(build_M_xp<double>(2, 2), fixtures::M_x2()), 1e-12);
  EXPECT_LE(max_abs(build_M_xp<double>(2, 3), fixtures::M_x3()), 1e-12);
  EXPECT_LE(max_abs(build_M_xp<double>(2, 4), fixtures::M_x4()), 1e-12);
}

TEST(ChebFixtures, ProductLifting) {
  EXPECT_LE(max_abs(build_N<double>(2, NWeight::constant), fixtures::N_1()), 1e-12);
  EXPECT_LE(max_abs(build_N<double>(2, NWeight::linear_x), fixtures::N_x()), 1e-12);
}

TEST(ChebFixtures, ConstraintAndSelection) {
  for (double x : {-1.0, -0.2, 0.0, 0.7, 1.0}) EXPECT_LE(max_abs(build_B(2, x), fixtures::B(x)), 1e-12);
  EXPECT_LE(max_abs(build_Pa<double>(2), fixtures::P_a()), 1e-12);
}

TEST(Cheb, OneQubitDerivative) {
  MatrixXd G(2, 2);
  G << 0, std::sqrt(2.0), 0, 0;
  EXPECT_LE(max_abs(build_G_T<double>(1), G), 1e-14);
}

TEST(Cheb, NodesAreRootsAndTauIsOrthonormalThere) {
  for (int n = 1; n <= 6; ++n) {
    const auto N = static_cast<Eigen::Index>(dim_of(n));
    const VectorXd x = chebyshev_nodes<double>(n);
    MatrixXd T(N, N);
    for (Eigen::Index j = 0; j < N; ++j) {
      EXPECT_NEAR(chebyshev_value(static_cast<int>(N), x(j)), 0.0, 1e-12);
      T.col(j) = tau_state(n, x(j));
    }
    EXPECT_LE(max_abs(T.transpose() * T, MatrixXd::Identity(N, N)), 1e-12) << "n=" << n;
  }
}

TEST(Cheb, ChebyshevValueMatchesCosine) {
  for (int k = 0; k < 20; ++k)
    for (double x : {-1.0, -0.9, -0.3, 0.0, 0.4, 0.99, 1.0})
      EXPECT_NEAR(chebyshev_value(k, x), std::cos(k * std::acos(x)), 1e-12);
}

TEST(Cheb, DomainChecks) {
  EXPECT_THROW(tau_state(2, 1.5), std::domain_error);
  EXPECT_THROW(build_G_T<double>(0), std::invalid_argument);
  EXPECT_THROW(build_D(2, 0, 0.3, 0.0), std::domain_error);
  EXPECT_THROW(build_D(2, 2, 0.3, 1.0), std::invalid_argument);
}

TEST(Cheb, GramOfIdentity) {
  const MatrixXd I = MatrixXd::Identity(5, 5);
  EXPECT_EQ(gram(I), I);
}

TEST(Cheb, ChebyshevFitReproducesPolynomial) {
  auto f = [](double x) { return 3 * x * x * x - x + 0.25; };
  const VectorXd v = chebyshev_fit(2, f);
  for (double x : {-1.0, -0.5, 0.1, 0.8, 1.0}) EXPECT_NEAR(latent_eval(2, x, v), f(x), 1e-12);
}

class IdentitySweep : public ::testing::TestWithParam<int> {};

TEST_P(IdentitySweep, AllIdentitiesHold) {
  for (const auto& c : identity_suite(GetParam(), 100, 11)) EXPECT_TRUE(c.pass()) << c.name << " " << c.residual;
}

INSTANTIATE_TEST_SUITE_P(Qubits, IdentitySweep, ::testing::Values(1, 2, 3, 4, 5));

TEST(Cheb, SecondDerivativeOfCubic) {
  // f = T_3: f'' = 24 x.
  VectorXd v = VectorXd::Zero(4);
  v(3) = 1.0 / basis_weight<double>(2, 3);
  const MatrixXd G = build_G_T<double>(2);
  for (double x : {-0.6, 0.2, 0.9}) EXPECT_NEAR(latent_eval(2, x, VectorXd(G * G * v)), 24 * x, 1e-12);
}
