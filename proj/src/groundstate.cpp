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

#include "chebham/groundstate.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <sstream>
#include <stdexcept>

#include <unsupported/Eigen/NonLinearOptimization>

namespace chebham {

namespace {

// Indices of the middle-zero subspace in the permutation-free layout.
std::vector<Eigen::Index> middle_zero_index(int n) {
  const auto N = static_cast<Eigen::Index>(dim_of(n));
  std::vector<Eigen::Index> idx;
  idx.reserve(static_cast<std::size_t>(N * N));
  for (Eigen::Index a = 0; a < N; ++a)
    for (Eigen::Index b = 0; b < N; ++b) idx.push_back(a * 2 * N + b);
  return idx;
}

struct ProductResidual {
  using Scalar = double;
  enum { InputsAtCompileTime = Eigen::Dynamic, ValuesAtCompileTime = Eigen::Dynamic };
  using InputType = VectorXd;
  using ValueType = VectorXd;
  using JacobianType = MatrixXd;

  const MatrixXd& L;  // stacked residual operator on psi (x) psi
  Eigen::Index N;

  int inputs() const { return static_cast<int>(N); }
  int values() const { return static_cast<int>(L.rows()); }

  int operator()(const VectorXd& p, VectorXd& r) const {
    const double nr = p.norm();
    if (nr == 0.0) return -1;
    const VectorXd v = p / nr;
    r = L * kron(v);
    return 0;
  }

  int df(const VectorXd& p, MatrixXd& J) const {
    const double nr = p.norm();
    if (nr == 0.0) return -1;
    const VectorXd v = p / nr;
    MatrixXd K(L.rows(), N);
    for (Eigen::Index i = 0; i < N; ++i) {
      VectorXd col = L.middleCols(i * N, N) * v;
      for (Eigen::Index a = 0; a < N; ++a) col += v(a) * L.col(a * N + i);
      K.col(i) = col;
    }
    J = (K - (K * v) * v.transpose()) / nr;
    return 0;
  }

  VectorXd kron(const VectorXd& v) const {
    VectorXd u(N * N);
    for (Eigen::Index a = 0; a < N; ++a) u.segment(a * N, N) = v(a) * v;
    return u;
  }
};

MatrixXd stacked_residual(const EffectiveHamiltonian& H) {
  Eigen::Index rows = 0;
  for (const auto& c : H.constituents) rows += c.op.rows();
  MatrixXd L(rows, H.matrix.cols());
  Eigen::Index r = 0;
  for (const auto& c : H.constituents) {
    L.middleRows(r, c.op.rows()) = std::sqrt(c.weight) * c.op;
    r += c.op.rows();
  }
  return L;
}

VectorXd dominant_factor(const VectorXd& z, Eigen::Index N) {
  const MatrixXd M = Eigen::Map<const MatrixXd>(z.data(), N, N).transpose();
  Eigen::JacobiSVD<MatrixXd> svd(M, Eigen::ComputeThinU);
  return svd.matrixU().col(0);
}

}  // namespace

double default_zero_tol(double lambda_max) { return std::max(1e-10, 1e-8 * lambda_max); }

void fix_sign(VectorXd& v) {
  if (v.size() == 0) return;
  Eigen::Index k = 0;
  double best = -1.0;
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    // Small slack so that near-ties resolve to the first index.
    if (std::abs(v(i)) > best * (1.0 + 1e-9)) {
      best = std::abs(v(i));
      k = i;
    }
  }
  if (v(k) < 0.0) v = -v;
}

SpectrumResult eigensolve(const MatrixXd& H, double zero_tol) {
  if (H.rows() != H.cols() || H.rows() == 0) throw std::invalid_argument("eigensolve: matrix must be square and nonempty");
  const double scale = std::max(1.0, H.cwiseAbs().maxCoeff());
  if ((H - H.transpose()).cwiseAbs().maxCoeff() > 1e-10 * scale)
    throw std::invalid_argument("eigensolve: matrix is not symmetric");
  Eigen::SelfAdjointEigenSolver<MatrixXd> es(H);
  if (es.info() != Eigen::Success) throw std::runtime_error("eigensolve: decomposition failed");

  SpectrumResult out;
  out.eigenvalues = es.eigenvalues();
  out.eigenvectors = es.eigenvectors();
  out.lambda_max = out.eigenvalues(out.eigenvalues.size() - 1);
  out.zero_tol = zero_tol > 0.0 ? zero_tol : default_zero_tol(out.lambda_max);
  out.ground_vector = out.eigenvectors.col(0);
  fix_sign(out.ground_vector);
  out.gap = out.lambda_2() - out.lambda_min();
  for (Eigen::Index i = 0; i < out.eigenvalues.size(); ++i)
    if (out.eigenvalues(i) < out.zero_tol) ++out.zero_space_dim;
  return out;
}

double fidelity(const VectorXd& a, const VectorXd& b) {
  const double d = a.dot(b);
  return d * d / (a.squaredNorm() * b.squaredNorm());
}

VectorXd uniform_state(std::size_t dim) {
  return VectorXd::Constant(static_cast<Eigen::Index>(dim), 1.0 / std::sqrt(static_cast<double>(dim)));
}

QiteResult qite_evolve(const SpectrumResult& spec, double t, const VectorXd& initial) {
  if (!(t > 0.0)) throw std::invalid_argument("qite: evolution time must be positive");
  if (initial.size() != spec.eigenvalues.size()) throw std::invalid_argument("qite: initial state dimension mismatch");
  const double nrm = initial.norm();
  if (nrm == 0.0) throw std::invalid_argument("qite: zero initial state");
  VectorXd c = spec.eigenvectors.transpose() * (initial / nrm);

  QiteResult out;
  double ground_weight = 0.0;
  for (Eigen::Index i = 0; i < c.size(); ++i)
    if (spec.eigenvalues(i) - spec.lambda_min() <= spec.zero_tol) ground_weight += c(i) * c(i);
  out.ground_overlap = std::sqrt(ground_weight);
  out.weak_overlap = out.ground_overlap < 1e-6;

  for (Eigen::Index i = 0; i < c.size(); ++i) c(i) *= std::exp(-t * (spec.eigenvalues(i) - spec.lambda_min()));
  out.state = spec.eigenvectors * c;
  const double sn = out.state.norm();
  if (sn == 0.0) throw std::runtime_error("qite: evolved state vanished");
  out.state /= sn;
  fix_sign(out.state);
  return out;
}

QiteResult qite_evolve(const MatrixXd& H, double t, const VectorXd& initial) {
  return qite_evolve(eigensolve(H), t, initial);
}

double evolution_time_bound(double lambda_max, double lambda_2, int n) {
  if (n < 2) throw std::invalid_argument("evolution time bound needs n >= 2");
  if (!(lambda_2 > 0.0)) throw std::domain_error("evolution time bound: degenerate gap (lambda_2 <= 0)");
  return lambda_max / (lambda_2 * (n - 1));
}

double evolution_time_bound(const SpectrumResult& spec, int n, bool nde) {
  double l2 = spec.lambda_2();
  if (nde) {
    l2 = 0.0;
    for (Eigen::Index i = 0; i < spec.eigenvalues.size(); ++i)
      if (spec.eigenvalues(i) > spec.zero_tol) {
        l2 = spec.eigenvalues(i);
        break;
      }
  }
  return evolution_time_bound(spec.lambda_max, l2, n);
}

VectorXd product_state(const VectorXd& psi, Workflow workflow) {
  const Eigen::Index N = psi.size();
  if (workflow == Workflow::standard) {
    VectorXd u(N * N);
    for (Eigen::Index a = 0; a < N; ++a) u.segment(a * N, N) = psi(a) * psi;
    return u;
  }
  VectorXd u = VectorXd::Zero(2 * N * N);
  for (Eigen::Index a = 0; a < N; ++a) u.segment(a * 2 * N, N) = psi(a) * psi;
  return u;
}

double nde_objective(const MatrixXd& H, const VectorXd& psi, Workflow workflow) {
  const VectorXd u = product_state(psi.normalized(), workflow);
  return u.dot(H * u);
}

NdeSearchResult nde_product_search(const EffectiveHamiltonian& H, int n, Workflow workflow,
                                   double anchor_x, const NdeSearchConfig& cfg) {
  if (!H.doubled) throw std::invalid_argument("product search needs a doubled Hamiltonian");
  const auto N = static_cast<Eigen::Index>(dim_of(n));
  const Eigen::Index want = workflow == Workflow::standard ? N * N : 2 * N * N;
  if (H.matrix.rows() != want) throw std::invalid_argument("product search: Hamiltonian dimension does not match n");

  const SpectrumResult spec = eigensolve(H.matrix);
  if (spec.zero_space_dim < 1) throw std::runtime_error("product search: Hamiltonian has no zero space");

  MatrixXd L = stacked_residual(H);
  if (workflow == Workflow::permutation_free) {
    const auto idx = middle_zero_index(n);
    MatrixXd Ls(L.rows(), N * N);
    for (Eigen::Index k = 0; k < N * N; ++k) Ls.col(k) = L.col(idx[static_cast<std::size_t>(k)]);
    L = std::move(Ls);
  }

  std::vector<VectorXd> seeds;
  const auto mz = middle_zero_index(n);
  for (int k = 0; k < spec.zero_space_dim; ++k) {
    VectorXd z = spec.eigenvectors.col(k);
    if (workflow == Workflow::permutation_free) {
      VectorXd r(N * N);
      for (Eigen::Index i = 0; i < N * N; ++i) r(i) = z(mz[static_cast<std::size_t>(i)]);
      if (r.norm() < 1e-8) continue;
      z = r;
    }
    seeds.push_back(dominant_factor(z, N));
  }
  std::mt19937_64 rng(cfg.seed);
  std::normal_distribution<double> gauss;
  for (int r = 0; r < cfg.restarts; ++r) {
    VectorXd p(N);
    for (Eigen::Index i = 0; i < N; ++i) p(i) = gauss(rng);
    seeds.push_back(p);
  }

  const VectorXd tau = tau_state(n, anchor_x);
  NdeSearchResult out;
  out.threshold = cfg.threshold_rel * spec.lambda_max;
  out.objective = std::numeric_limits<double>::infinity();
  double best_anchor = -1.0;
  double best_rejected = std::numeric_limits<double>::infinity();

  ProductResidual functor{L, N};
  for (const auto& s : seeds) {
    VectorXd p = s.normalized();
    Eigen::LevenbergMarquardt<ProductResidual> lm(functor);
    lm.parameters.maxfev = cfg.max_iter;
    lm.parameters.xtol = cfg.tol;
    lm.parameters.ftol = cfg.tol;
    lm.minimize(p);
    VectorXd v = p.normalized();
    fix_sign(v);
    const double obj = (L * functor.kron(v)).squaredNorm();
    ++out.candidates;
    if (obj > out.threshold) {
      best_rejected = std::min(best_rejected, obj);
      continue;
    }
    ++out.accepted;
    const double anchor = std::abs(tau.dot(v));
    if (anchor > best_anchor * (1.0 + 1e-9)) {
      best_anchor = anchor;
      out.psi = v;
      out.objective = obj;
      out.anchor_value = tau.dot(v);
    }
  }
  if (out.accepted == 0) {
    std::ostringstream os;
    os << "product search failed: best objective " << best_rejected << " above threshold " << out.threshold;
    throw std::runtime_error(os.str());
  }
  return out;
}

VectorXd permutation_free_ground(const SpectrumResult& spec, int n) {
  const auto N = static_cast<Eigen::Index>(dim_of(n));
  const Eigen::Index dim = spec.eigenvalues.size();
  if (dim != 2 * N * N) throw std::invalid_argument("permutation-free ground: dimension mismatch");
  const Eigen::Index k = std::min(dim, N * N + 1);
  const MatrixXd Z = spec.eigenvectors.leftCols(k);
  const auto idx = middle_zero_index(n);
  MatrixXd M(N * N, k);
  for (Eigen::Index i = 0; i < N * N; ++i) M.row(i) = Z.row(idx[static_cast<std::size_t>(i)]);
  Eigen::JacobiSVD<MatrixXd> svd(M, Eigen::ComputeThinV);
  VectorXd g = Z * svd.matrixV().col(0);
  g.normalize();
  fix_sign(g);
  return g;
}

}  // namespace chebham
