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

#include "chebham/verify.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include <unsupported/Eigen/KroneckerProduct>

#include "chebham/cheb.hpp"

namespace chebham {

namespace {

using Eigen::MatrixXd;
using Eigen::VectorXd;

// d/dx T_k = k U_{k-1}.
double chebyshev_derivative(int k, double x) {
  if (k == 0) return 0.0;
  double u0 = 1.0, u1 = 2.0 * x;
  if (k == 1) return 1.0;
  for (int j = 2; j < k; ++j) {
    const double u2 = 2.0 * x * u1 - u0;
    u0 = u1;
    u1 = u2;
  }
  return k * u1;
}

double series_derivative(int n, double x, const VectorXd& v) {
  double s = 0.0;
  for (Eigen::Index k = 0; k < v.size(); ++k)
    s += v(k) * basis_weight<double>(n, static_cast<std::size_t>(k)) * chebyshev_derivative(static_cast<int>(k), x);
  return s;
}

}  // namespace

std::vector<IdentityCheck> identity_suite(int n, int sweeps, std::uint64_t seed) {
  if (n < 1) throw std::invalid_argument("identity suite needs n >= 1");
  std::mt19937_64 rng(seed + static_cast<std::uint64_t>(n));
  std::uniform_real_distribution<double> ux(-1.0, 1.0);
  std::normal_distribution<double> g;
  const auto N = static_cast<Eigen::Index>(dim_of(n));
  auto rand_vec = [&](Eigen::Index size) {
    VectorXd v(size);
    for (auto& e : v) e = g(rng);
    return VectorXd(v / v.norm());
  };

  std::vector<IdentityCheck> out;
  auto add = [&](std::string name, double r) { out.push_back({std::move(name), n, r, 1e-10}); };

  const VectorXd nodes = chebyshev_nodes<double>(n);
  MatrixXd T(N, N);
  double node_zero = 0.0;
  for (Eigen::Index j = 0; j < N; ++j) {
    T.col(j) = tau_state(n, nodes(j));
    node_zero = std::max(node_zero, std::abs(chebyshev_value(static_cast<int>(N), nodes(j))));
  }
  add("nodes are roots", node_zero);
  add("tau orthonormal at nodes", (T.transpose() * T - MatrixXd::Identity(N, N)).cwiseAbs().maxCoeff());

  const MatrixXd G = build_G_T<double>(n);
  const int pmax = std::min<int>(4, static_cast<int>(N));
  std::vector<MatrixXd> M;
  for (int p = 0; p <= pmax; ++p) M.push_back(build_M_xp<double>(n, p));
  const MatrixXd N1 = build_N<double>(n, NWeight::constant);
  const MatrixXd Nx = build_N<double>(n, NWeight::linear_x);
  const MatrixXd Pa = build_Pa<double>(n);
  const MatrixXd Qa = build_Qa<double>(n);

  double r_der = 0.0, r_b = 0.0, r_bg = 0.0, r_d0 = 0.0, r_d1 = 0.0, r_n1 = 0.0, r_nx = 0.0, r_qa = 0.0;
  std::vector<double> r_m(M.size(), 0.0);
  for (int s = 0; s < sweeps; ++s) {
    const double x = ux(rng), x0 = ux(rng);
    const VectorXd v = rand_vec(N), w = rand_vec(N);
    const VectorXd t = tau_state(n, x), t1 = tau_state(n + 1, x), t0 = tau_state(n, x0);
    const double f = t.dot(v);

    const double d = series_derivative(n, x, v);
    r_der = std::max(r_der, std::abs(t.dot(G * v) - d) / std::max(1.0, std::abs(d)));

    for (std::size_t p = 0; p < M.size(); ++p)
      r_m[p] = std::max(r_m[p], std::abs(std::pow(x, static_cast<double>(p)) * f - t1.dot(M[p] * v)));

    VectorXd e0 = VectorXd::Zero(N);
    e0(0) = std::sqrt(static_cast<double>(N));
    r_b = std::max(r_b, (build_B(n, x0) * v - t0.dot(v) * e0).cwiseAbs().maxCoeff());
    r_bg = std::max(r_bg, (build_B(n, x0) * G * v - series_derivative(n, x0, v) * e0).cwiseAbs().maxCoeff() /
                              std::max(1.0, std::abs(series_derivative(n, x0, v))));

    // <tau(x)| D psi does not depend on x.
    const double val = 0.5 + std::abs(ux(rng));
    r_d0 = std::max(r_d0, std::abs(t.dot(build_D(n, 0, x0, val) * v) - t0.dot(v) / val));
    const double dd = series_derivative(n, x0, v);
    r_d1 = std::max(r_d1, std::abs(t.dot(build_D(n, 1, x0, val) * v) - dd / val) / std::max(1.0, std::abs(dd / val)));

    const VectorXd vw = Eigen::kroneckerProduct(v, w);
    const double fw = f * t.dot(w);
    r_n1 = std::max(r_n1, std::abs(t1.dot(N1 * vw) - fw));
    r_nx = std::max(r_nx, std::abs(t1.dot(Nx * vw) - x * fw));

    const VectorXd u = rand_vec(2 * N * N);
    const VectorXd tt = Eigen::kroneckerProduct(t, t);
    r_qa = std::max(r_qa, std::abs(t1.dot(Qa * u) - tt.dot(Pa * u)));
  }
  add("derivative G^T", r_der);
  for (std::size_t p = 0; p < r_m.size(); ++p) add("lifting M_x^" + std::to_string(p), r_m[p]);
  add("product N_1", r_n1);
  add("product N_x", r_nx);
  add("constraint B", r_b);
  add("constraint B G^T", r_bg);
  add("regular D0", r_d0);
  add("regular D1", r_d1);
  add("selection P_a P_a^T = I", (Pa * Pa.transpose() - MatrixXd::Identity(N * N, N * N)).cwiseAbs().maxCoeff());
  add("isometry Q_a", r_qa);
  return out;
}

}  // namespace chebham
