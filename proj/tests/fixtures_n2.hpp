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

// Operator tables for n = 2, transcribed entrywise.

#ifndef CHEBHAM_TESTS_FIXTURES_N2_HPP
#define CHEBHAM_TESTS_FIXTURES_N2_HPP

#include <cmath>

#include <Eigen/Dense>

namespace fixtures {

inline const double r2 = std::sqrt(2.0);

inline Eigen::MatrixXd G_T() {
  Eigen::MatrixXd m(4, 4);
  m << 0, r2, 0, 3 * r2,
       0, 0, 4, 0,
       0, 0, 0, 6,
       0, 0, 0, 0;
  return m;
}

inline Eigen::MatrixXd M_1() {
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(8, 4);
  m.topRows(4) = r2 * Eigen::MatrixXd::Identity(4, 4);
  return m;
}

inline Eigen::MatrixXd M_x() {
  Eigen::MatrixXd m(8, 4);
  m << 0, 1, 0, 0,
       1, 0, 1 / r2, 0,
       0, 1 / r2, 0, 1 / r2,
       0, 0, 1 / r2, 0,
       0, 0, 0, 1 / r2,
       0, 0, 0, 0,
       0, 0, 0, 0,
       0, 0, 0, 0;
  return m;
}

inline Eigen::MatrixXd M_x2() {
  Eigen::MatrixXd m(8, 4);
  m << 1 / r2, 0, 0.5, 0,
       0, 3 / (2 * r2), 0, 1 / (2 * r2),
       0.5, 0, 1 / r2, 0,
       0, 1 / (2 * r2), 0, 1 / r2,
       0, 0, 1 / (2 * r2), 0,
       0, 0, 0, 1 / (2 * r2),
       0, 0, 0, 0,
       0, 0, 0, 0;
  return m;
}

inline Eigen::MatrixXd M_x3() {
  Eigen::MatrixXd m(8, 4);
  m << 0, 0.75, 0, 0.25,
       0.75, 0, 1 / r2, 0,
       0, 1 / r2, 0, 3 / (4 * r2),
       0.25, 0, 3 / (4 * r2), 0,
       0, 1 / (4 * r2), 0, 3 / (4 * r2),
       0, 0, 1 / (4 * r2), 0,
       0, 0, 0, 1 / (4 * r2),
       0, 0, 0, 0;
  return m;
}

inline Eigen::MatrixXd M_x4() {
  Eigen::MatrixXd m(8, 4);
  m << 3 / (4 * r2), 0, 0.5, 0,
       0, 5 / (4 * r2), 0, 5 / (8 * r2),
       0.5, 0, 7 / (8 * r2), 0,
       0, 5 / (8 * r2), 0, 3 / (4 * r2),
       0.125, 0, 1 / (2 * r2), 0,
       0, 1 / (8 * r2), 0, 1 / (2 * r2),
       0, 0, 1 / (8 * r2), 0,
       0, 0, 0, 1 / (8 * r2);
  return m;
}

inline Eigen::MatrixXd N_1() {
  const double a = 1 / r2, h = 0.5;
  Eigen::MatrixXd m(8, 16);
  m << a, 0, 0, 0, 0, a, 0, 0, 0, 0, a, 0, 0, 0, 0, a,
       0, a, 0, 0, a, 0, h, 0, 0, h, 0, h, 0, 0, h, 0,
       0, 0, a, 0, 0, h, 0, h, a, 0, 0, 0, 0, h, 0, 0,
       0, 0, 0, a, 0, 0, h, 0, 0, h, 0, 0, a, 0, 0, 0,
       0, 0, 0, 0, 0, 0, 0, h, 0, 0, h, 0, 0, h, 0, 0,
       0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, h, 0, 0, h, 0,
       0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, h,
       0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0;
  return m;
}

inline Eigen::MatrixXd N_x() {
  const double h = 0.5, q = 0.25, b = 1 / (2 * r2);
  Eigen::MatrixXd m(8, 16);
  m << 0, h, 0, 0, h, 0, b, 0, 0, b, 0, b, 0, 0, b, 0,
       h, 0, b, 0, 0, 0.75, 0, q, b, 0, h, 0, 0, q, 0, h,
       0, b, 0, b, b, 0, h, 0, 0, h, 0, q, b, 0, q, 0,
       0, 0, b, 0, 0, q, 0, h, b, 0, q, 0, 0, h, 0, 0,
       0, 0, 0, b, 0, 0, q, 0, 0, q, 0, q, b, 0, q, 0,
       0, 0, 0, 0, 0, 0, 0, q, 0, 0, q, 0, 0, q, 0, q,
       0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, q, 0, 0, q, 0,
       0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, q;
  return m;
}

// sqrt(2) * [T_0/sqrt(2), T_1, T_2, T_3] in the first row.
inline Eigen::MatrixXd B(double x) {
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(4, 4);
  m(0, 0) = 1.0;
  m(0, 1) = r2 * x;
  m(0, 2) = r2 * (2 * x * x - 1);
  m(0, 3) = r2 * (4 * x * x * x - 3 * x);
  return m;
}

inline Eigen::MatrixXd P_a() {
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(16, 32);
  const int cols[16] = {0, 1, 2, 3, 8, 9, 10, 11, 16, 17, 18, 19, 24, 25, 26, 27};
  for (int r = 0; r < 16; ++r) m(r, cols[r]) = 1.0;
  return m;
}

}  // namespace fixtures

#endif  // CHEBHAM_TESTS_FIXTURES_N2_HPP
