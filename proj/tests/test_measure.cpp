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
#include "chebham/measure.hpp"
#include "chebham/solver.hpp"
#include "chebham/spec_io.hpp"

using namespace chebham;

namespace {

ProblemSpec load(const std::string& name) { return parse_spec_file(std::string(CHEBHAM_SPEC_DIR) + "/" + name + ".spec"); }

SolutionModel model_for(const std::string& name) { return prepare(load(name), RunOptions{}).model; }

}  // namespace

TEST(FeatureMap, FirstColumnIsTau) {
  for (int n = 1; n <= 4; ++n)
    for (double x : {-0.9, 0.0, 0.37}) {
      const MatrixXd U = feature_map_unitary(n, x);
      const VectorXd t = tau_state(n, x);
      EXPECT_LE((U.col(0).head(t.size()) - t / std::sqrt(2.0)).cwiseAbs().maxCoeff(), 1e-14);
      EXPECT_NEAR(U.col(0).norm(), 1.0, 1e-14);
      EXPECT_LE((U.transpose() * U - MatrixXd::Identity(U.rows(), U.cols())).cwiseAbs().maxCoeff(), 1e-12);
    }
}

TEST(Overlap, LegendreL2IsExactAtTwoQubits) {
  const SolutionModel m = model_for("legendre_l2_m0");
  for (double x : {-1.0, -0.3, 0.5, 1.0}) EXPECT_NEAR(model_value(m, x), 0.5 * (3 * x * x - 1), 1e-12);
  EXPECT_NEAR(overlap_derivative(m, 0.0) * m.scale, 0.0, 1e-12);
}

TEST(Overlap, ScaleReproducesAnchor) {
  for (const char* name : {"cde_repeated", "laplace", "nde_even", "legendre_l2_m1"}) {
    const SolutionModel m = model_for(name);
    EXPECT_NEAR(model_value(m, m.anchor_x, m.anchor_y), m.anchor_value, 1e-10 * std::abs(m.anchor_value)) << name;
    EXPECT_GT(m.eta, 0.0);
  }
}

TEST(Overlap, ZeroAnchorRejected) {
  SolutionModel m = model_for("legendre_l2_m0");
  // P_2 vanishes at 1/sqrt(3).
  EXPECT_THROW(recover_scale(m, 1.0 / std::sqrt(3.0), 0.3), std::exception);
}

TEST(Interferometric, ZeroShotsMatchDirect) {
  for (const char* name : {"cde_distinct", "heat", "nde_even"}) {
    const SolutionModel m = model_for(name);
    for (double x : {-0.8, 0.1, 0.6}) {
      const double y = m.two_d() ? -0.4 : 0.0;
      const auto e = interferometric(m, x, y, 0, nullptr);
      EXPECT_NEAR(e.value, overlap_direct(m, x, y).value * m.scale, 1e-9) << name << " " << x;
      EXPECT_EQ(e.std_error, 0.0);
    }
  }
}

TEST(Interferometric, ShotsNeedGenerator) {
  const SolutionModel m = model_for("cde_repeated");
  EXPECT_THROW(interferometric(m, 0.2, 0.0, 100, nullptr), std::invalid_argument);
}

TEST(Interferometric, ShotNoiseWithinStandardError) {
  const SolutionModel m = model_for("cde_repeated");
  std::mt19937_64 rng(17);
  int inside = 0;
  const int trials = 200;
  const double exact = m.scale * overlap_direct(m, 0.3).value;
  double se = 0.0;
  for (int i = 0; i < trials; ++i) {
    const auto e = interferometric(m, 0.3, 0.0, 100000, &rng);
    se = e.std_error;
    EXPECT_GT(e.std_error, 0.0);
    if (std::abs(e.value - exact) <= 3.0 * e.std_error) ++inside;
  }
  EXPECT_GE(inside, trials * 95 / 100);
  EXPECT_LT(se, 0.05 * std::abs(exact));
}

TEST(Interferometric, SeededRunsRepeat) {
  const SolutionModel m = model_for("nde_even");
  std::mt19937_64 a(3), b(3);
  EXPECT_EQ(interferometric(m, 0.4, 0.0, 5000, &a).value, interferometric(m, 0.4, 0.0, 5000, &b).value);
}
