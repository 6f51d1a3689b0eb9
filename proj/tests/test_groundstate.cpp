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

#include "chebham/groundstate.hpp"
#include "chebham/measure.hpp"
#include "chebham/spec_io.hpp"

using namespace chebham;
using Eigen::MatrixXd;
using Eigen::VectorXd;

namespace {

ProblemSpec load(const std::string& name) { return parse_spec_file(std::string(CHEBHAM_SPEC_DIR) + "/" + name + ".spec"); }

}  // namespace

TEST(Eigensolve, IdentityHasNoZeroSpace) {
  const auto r = eigensolve(MatrixXd::Identity(4, 4));
  EXPECT_EQ(r.zero_space_dim, 0);
  for (double v : r.eigenvalues) EXPECT_NEAR(v, 1.0, 1e-14);
}

TEST(Eigensolve, SortedUnitGroundWithPositiveLargestComponent) {
  MatrixXd H(3, 3);
  H << 2, -1, 0, -1, 2, -1, 0, -1, 2;
  const auto r = eigensolve(H);
  EXPECT_LE(r.eigenvalues(0), r.eigenvalues(1));
  EXPECT_LE(r.eigenvalues(1), r.eigenvalues(2));
  EXPECT_NEAR(r.ground_vector.norm(), 1.0, 1e-14);
  Eigen::Index i;
  r.ground_vector.cwiseAbs().maxCoeff(&i);
  EXPECT_GT(r.ground_vector(i), 0.0);
  EXPECT_NEAR(r.lambda_min(), 2 - std::sqrt(2.0), 1e-12);
  EXPECT_NEAR(r.gap, std::sqrt(2.0), 1e-12);
}

TEST(Eigensolve, RejectsAsymmetricInput) {
  MatrixXd H = MatrixXd::Identity(3, 3);
  H(0, 2) = 1.0;
  EXPECT_THROW(eigensolve(H), std::invalid_argument);
}

TEST(Eigensolve, DefaultZeroTolerance) {
  EXPECT_EQ(default_zero_tol(1.0), 1e-8);
  EXPECT_EQ(default_zero_tol(1e-5), 1e-10);
}

TEST(Eigensolve, LegendreL2Amplitudes) {
  const auto r = eigensolve(build_hamiltonian(load("legendre_l2_m0")).matrix);
  EXPECT_NEAR(std::abs(r.ground_vector(0)), 0.426401, 1e-5);
  EXPECT_NEAR(std::abs(r.ground_vector(2)), 0.904534, 1e-5);
  EXPECT_NEAR(r.ground_vector(1), 0.0, 1e-12);
}

TEST(Qite, MatchesEigensolveAfterFourTimesTheBound) {
  const auto H = build_hamiltonian(load("legendre_l4_m0"));
  const auto sp = eigensolve(H.matrix);
  const double t = 4.0 * evolution_time_bound(sp, 3);
  const auto q = qite_evolve(H.matrix, t, uniform_state(H.dim()));
  EXPECT_GE(fidelity(q.state, sp.ground_vector), 1.0 - 1e-6);
  EXPECT_FALSE(q.weak_overlap);
}

TEST(Qite, ShortTimeDoesNotConverge) {
  const auto H = build_hamiltonian(load("legendre_l4_m0"));
  const auto sp = eigensolve(H.matrix);
  const auto q = qite_evolve(sp, 1e-4, uniform_state(H.dim()));
  EXPECT_LT(fidelity(q.state, sp.ground_vector), 0.99);
}

TEST(Qite, BoundRules) {
  EXPECT_NEAR(evolution_time_bound(10.0, 2.0, 3), 2.5, 1e-15);
  EXPECT_THROW(evolution_time_bound(10.0, 2.0, 1), std::invalid_argument);
  EXPECT_THROW(evolution_time_bound(10.0, 0.0, 3), std::domain_error);
  EXPECT_THROW(qite_evolve(MatrixXd::Identity(2, 2), -1.0, uniform_state(2)), std::invalid_argument);
}

TEST(Qite, LegendreL2BoundBelowFifteen) {
  const auto sp = eigensolve(build_hamiltonian(load("legendre_l2_m0")).matrix);
  EXPECT_LE(evolution_time_bound(sp, 2), 15.0);
}

TEST(ProductSearch, NdeEvenReachesTheZeroSpace) {
  const ProblemSpec s = load("nde_even");
  const auto H = build_hamiltonian(s);
  const auto sp = eigensolve(H.matrix);
  EXPECT_GE(sp.zero_space_dim, 1);
  const auto r = nde_product_search(H, s.n, s.workflow, s.regular.x);
  EXPECT_LT(r.objective, 1e-10 * sp.lambda_max);
  EXPECT_GE(r.accepted, 1);
  EXPECT_NEAR(r.psi.norm(), 1.0, 1e-12);
  EXPECT_NEAR(nde_objective(H.matrix, r.psi, s.workflow), r.objective, 1e-12 * sp.lambda_max);
}

TEST(ProductSearch, DeterministicForFixedSeed) {
  const ProblemSpec s = load("nde_bvp");
  const auto H = build_hamiltonian(s);
  NdeSearchConfig cfg;
  cfg.seed = 3;
  const auto a = nde_product_search(H, s.n, s.workflow, s.regular.x, cfg);
  const auto b = nde_product_search(H, s.n, s.workflow, s.regular.x, cfg);
  EXPECT_EQ(a.psi, b.psi);
  EXPECT_EQ(a.objective, b.objective);
}

TEST(ProductSearch, ProductStateLayouts) {
  VectorXd p(2);
  p << 0.6, 0.8;
  const VectorXd u = product_state(p, Workflow::standard);
  ASSERT_EQ(u.size(), 4);
  EXPECT_NEAR(u(1), 0.48, 1e-15);
  const VectorXd w = product_state(p, Workflow::permutation_free);
  ASSERT_EQ(w.size(), 8);
  EXPECT_NEAR(w.norm(), 1.0, 1e-15);
  EXPECT_EQ(w(2), 0.0);  // middle qubit one
  EXPECT_NEAR(w(4), 0.48, 1e-15);
}

TEST(PermutationFree, LaplaceGroundMatchesStandardWorkflow) {
  const auto a = eigensolve(build_hamiltonian(load("laplace")).matrix);
  const auto b = eigensolve(build_hamiltonian(load("laplace_pf")).matrix);
  const VectorXd g = permutation_free_ground(b, 3);
  const auto N = 8;
  VectorXd mid(N * N);
  for (int a0 = 0; a0 < N; ++a0) mid.segment(a0 * N, N) = g.segment(a0 * 2 * N, N);
  EXPECT_GE(fidelity(mid / mid.norm(), a.ground_vector), 1.0 - 1e-8);
}
