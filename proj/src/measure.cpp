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

#include "chebham/measure.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "chebham/qsvt.hpp"

namespace chebham {

namespace {

// Ground state as an (N or 2N) x 2N matrix on the |0_a psi_x>|0_a psi_y>
// layout; rows beyond N stay zero.
MatrixXd paired_layout(const SolutionModel& m, Eigen::Index rows) {
  const auto N = static_cast<Eigen::Index>(dim_of(m.n));
  MatrixXd P = MatrixXd::Zero(rows, 2 * N);
  if (m.workflow == Workflow::standard) {
    if (m.ground.size() != N * N) throw std::invalid_argument("ground state size does not match n");
    for (Eigen::Index i = 0; i < N; ++i) P.row(i).head(N) = m.ground.segment(i * N, N).transpose();
  } else {
    if (m.ground.size() != 2 * N * N) throw std::invalid_argument("ground state size does not match n");
    for (Eigen::Index i = 0; i < N; ++i) P.row(i) = m.ground.segment(i * 2 * N, 2 * N).transpose();
  }
  return P;
}

MatrixXd std_matrix(const SolutionModel& m) {
  const auto N = static_cast<Eigen::Index>(dim_of(m.n));
  const VectorXd v = standard_layout(m);
  return Eigen::Map<const MatrixXd>(v.data(), N, N).transpose();
}

OverlapEstimate reconstruct(double K, double norm2, double pG, double pC, double r2, long shots,
                            std::mt19937_64* rng) {
  OverlapEstimate out;
  out.method = "interferometric";
  out.shots = shots;
  pG = std::clamp(pG, 0.0, 1.0);
  pC = std::clamp(pC, 0.0, 1.0);
  if (shots > 0) {
    if (!rng) throw std::invalid_argument("shot sampling needs a random generator");
    std::binomial_distribution<long> bg(shots, pG), bc(shots, pC);
    const double S = static_cast<double>(shots);
    pG = static_cast<double>(bg(*rng)) / S;
    pC = static_cast<double>(bc(*rng)) / S;
    out.std_error = std::abs(K) * std::sqrt(norm2 * norm2 * pC * (1.0 - pC) / S + pG * (1.0 - pG) / S);
  } else if (shots < 0) {
    throw std::invalid_argument("negative shot count");
  }
  out.value = K * (norm2 * pC - pG - r2);
  return out;
}

}  // namespace

MatrixXd feature_map_unitary(int n, double x) {
  const VectorXd tau = tau_state(n, x);
  const auto N = tau.size();
  VectorXd c = VectorXd::Zero(2 * N);
  c.head(N) = tau / std::sqrt(2.0);
  c(N) = std::sqrt(std::max(0.0, 1.0 - tau.squaredNorm() / 2.0));
  VectorXd v = -c;
  v(0) += 1.0;
  const double vv = v.squaredNorm();
  MatrixXd U = MatrixXd::Identity(2 * N, 2 * N);
  if (vv > 1e-30) U -= (2.0 / vv) * v * v.transpose();
  return U;
}

VectorXd standard_layout(const SolutionModel& m) {
  if (!m.two_d() && !m.nde()) return m.ground;
  if (m.workflow == Workflow::standard) return m.ground;
  const auto N = static_cast<Eigen::Index>(dim_of(m.n));
  VectorXd out(N * N);
  for (Eigen::Index a = 0; a < N; ++a) out.segment(a * N, N) = m.ground.segment(a * 2 * N, N);
  return out;
}

OverlapEstimate overlap_direct(const SolutionModel& m, double x, double y) {
  OverlapEstimate out;
  if (m.two_d()) {
    out.value = tau_state(m.n, x).dot(std_matrix(m) * tau_state(m.n, y));
  } else if (m.nde()) {
    out.value = tau_state(m.n, m.anchor_x).dot(std_matrix(m) * tau_state(m.n, x));
  } else {
    out.value = tau_state(m.n, x).dot(m.ground);
  }
  return out;
}

double overlap_derivative(const SolutionModel& m, double x) {
  if (m.two_d() || m.nde()) throw std::invalid_argument("derivative anchors apply to 1D linear models");
  return tau_state(m.n, x).dot(build_G_T<double>(m.n) * m.ground);
}

double model_value(const SolutionModel& m, double x, double y) {
  return m.scale * overlap_direct(m, x, y).value + m.c0;
}

void recover_scale(SolutionModel& m, double x_s, double value, int order, double y_s) {
  if (value == 0.0) throw std::domain_error("regular constraint value must be nonzero");
  m.anchor_x = x_s;
  m.anchor_y = y_s;
  m.anchor_value = value;
  if (m.nde()) {
    if (order != 0) throw std::invalid_argument("nde scale recovery needs a value anchor");
    const double g = overlap_direct(m, x_s).value;
    if (!(g > 1e-12)) {
      throw std::domain_error("ill-conditioned anchor: <tau(x_s) (x) tau(x_s), Psi> = " + std::to_string(g));
    }
    m.eta = value * value / g;
    m.scale = m.eta / value;
    m.s = std::copysign(std::sqrt(m.eta), value);
    return;
  }
  const double raw = order == 0 ? overlap_direct(m, x_s, y_s).value : overlap_derivative(m, x_s);
  if (std::abs(raw) <= 1e-12) {
    throw std::domain_error("ill-conditioned anchor: |f_q(x_s)| = " + std::to_string(std::abs(raw)));
  }
  m.s = value / raw;
  m.eta = m.s * m.s;
  m.scale = m.s;
}

OverlapEstimate interferometric_1d(const SolutionModel& m, double x, long shots, std::mt19937_64* rng) {
  const auto N = static_cast<Eigen::Index>(dim_of(m.n));
  if (m.ground.size() != N) throw std::invalid_argument("1D model needs an n-qubit ground state");
  const MatrixXd U = feature_map_unitary(m.n, x);
  VectorXd g = VectorXd::Zero(2 * N);
  g.head(N) = m.ground;
  const double aG = (U.transpose() * g)(0);
  VectorXd c = g;
  c(0) += 1.0;
  const double norm2 = c.squaredNorm();
  const double aC = (U.transpose() * c)(0) / std::sqrt(norm2);
  const double Nd = static_cast<double>(N);
  return reconstruct(m.s * std::sqrt(Nd), norm2, aG * aG, aC * aC, 1.0 / (2.0 * Nd), shots, rng);
}

OverlapEstimate interferometric_1d_positive(const SolutionModel& m, double x, long shots,
                                            std::mt19937_64* rng, int sign) {
  const auto N = static_cast<Eigen::Index>(dim_of(m.n));
  const MatrixXd U = feature_map_unitary(m.n, x);
  VectorXd g = VectorXd::Zero(2 * N);
  g.head(N) = m.ground;
  const double aG = (U.transpose() * g)(0);
  double p = aG * aG;
  OverlapEstimate out;
  out.method = "interferometric-positive";
  out.shots = shots;
  const double k = std::sqrt(2.0 * m.eta);
  if (shots > 0) {
    if (!rng) throw std::invalid_argument("shot sampling needs a random generator");
    std::binomial_distribution<long> b(shots, std::clamp(p, 0.0, 1.0));
    p = static_cast<double>(b(*rng)) / static_cast<double>(shots);
    out.std_error = p > 0.0 ? k * std::sqrt(p * (1.0 - p) / static_cast<double>(shots)) / (2.0 * std::sqrt(p)) : 0.0;
  }
  out.value = (sign < 0 ? -1.0 : 1.0) * k * std::sqrt(p);
  return out;
}

OverlapEstimate interferometric_2d(const SolutionModel& m, double x, double y, long shots, std::mt19937_64* rng) {
  if (!m.two_d()) throw std::invalid_argument("2D reconstruction needs a pde-2d model");
  const auto N = static_cast<Eigen::Index>(dim_of(m.n));
  const VectorXd ux = feature_map_unitary(m.n, x).col(0);
  const VectorXd uy = feature_map_unitary(m.n, y).col(0);
  MatrixXd P = paired_layout(m, 2 * N);
  const double aG = ux.dot(P * uy);
  P(0, 0) += 1.0;
  const double norm2 = P.squaredNorm();
  const double aC = ux.dot(P * uy) / std::sqrt(norm2);
  const double Nd = static_cast<double>(N);
  return reconstruct(m.s * 2.0 * Nd, norm2, aG * aG, aC * aC, 1.0 / (4.0 * Nd * Nd), shots, rng);
}

OverlapEstimate interferometric_nde(const SolutionModel& m, double x, long shots, std::mt19937_64* rng) {
  if (!m.nde()) throw std::invalid_argument("nde reconstruction needs an nde model");
  const auto N = static_cast<Eigen::Index>(dim_of(m.n));
  const MatrixXd UD = block_encode_B(m.n, m.anchor_x).unitary;
  MatrixXd Phi = UD * paired_layout(m, 4 * N);
  // <0_D| <+|^{n+1} on the first register.
  VectorXd h = VectorXd::Zero(4 * N);
  h.head(2 * N).setConstant(1.0 / std::sqrt(2.0 * static_cast<double>(N)));
  const VectorXd ux = feature_map_unitary(m.n, x).col(0);
  const double aG = h.dot(Phi * ux);
  Phi(0, 0) += 1.0;
  const double norm2 = Phi.squaredNorm();
  const double aC = h.dot(Phi * ux) / std::sqrt(norm2);
  const double Nd = static_cast<double>(N);
  const double K = m.eta * std::sqrt(8.0 * Nd * Nd * Nd) / m.anchor_value;
  return reconstruct(K, norm2, aG * aG, aC * aC, 1.0 / (4.0 * Nd * Nd), shots, rng);
}

OverlapEstimate interferometric(const SolutionModel& m, double x, double y, long shots, std::mt19937_64* rng) {
  if (m.nde()) return interferometric_nde(m, x, shots, rng);
  if (m.two_d()) return interferometric_2d(m, x, y, shots, rng);
  return interferometric_1d(m, x, shots, rng);
}

}  // namespace chebham
