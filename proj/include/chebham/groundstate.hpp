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

#ifndef CHEBHAM_GROUNDSTATE_HPP
#define CHEBHAM_GROUNDSTATE_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "chebham/problem.hpp"

namespace chebham {

struct SpectrumResult {
  VectorXd eigenvalues;   // ascending
  MatrixXd eigenvectors;  // columns match eigenvalues
  VectorXd ground_vector;
  double gap = 0.0;
  double lambda_max = 0.0;
  double zero_tol = 0.0;
  int zero_space_dim = 0;

  double lambda_min() const { return eigenvalues(0); }
  double lambda_2() const { return eigenvalues.size() > 1 ? eigenvalues(1) : eigenvalues(0); }
};

double default_zero_tol(double lambda_max);

// Flips v so that its largest-magnitude entry (first on ties) is positive.
void fix_sign(VectorXd& v);

SpectrumResult eigensolve(const MatrixXd& H, double zero_tol = -1.0);

double fidelity(const VectorXd& a, const VectorXd& b);

struct QiteResult {
  VectorXd state;
  double ground_overlap = 0.0;  // |<initial, ground space>| before evolution
  bool weak_overlap = false;
};

// exp(-t H) applied to `initial`, renormalized. H is evaluated spectrally
// after shifting by lambda_min, so large t does not underflow.
QiteResult qite_evolve(const MatrixXd& H, double t, const VectorXd& initial);
QiteResult qite_evolve(const SpectrumResult& spec, double t, const VectorXd& initial);

VectorXd uniform_state(std::size_t dim);

double evolution_time_bound(double lambda_max, double lambda_2, int n);
double evolution_time_bound(const SpectrumResult& spec, int n, bool nde = false);

struct NdeSearchConfig {
  int restarts = 24;
  int max_iter = 4000;
  double tol = 1e-15;
  double threshold_rel = 1e-10;
  std::uint64_t seed = 0;
};

struct NdeSearchResult {
  VectorXd psi;             // unit n-qubit factor
  double objective = 0.0;   // <psi psi| H |psi psi>
  double threshold = 0.0;
  double anchor_value = 0.0;  // f_q(x_s) of the selected factor
  int accepted = 0;         // candidates below threshold
  int candidates = 0;
};

// Product state psi (x) psi in the doubled space (standard) or
// psi (x) |0> (x) psi (permutation-free).
VectorXd product_state(const VectorXd& psi, Workflow workflow);

double nde_objective(const MatrixXd& H, const VectorXd& psi, Workflow workflow);

// Minimizes the product objective over unit psi. Among candidates below
// threshold_rel * lambda_max the one with largest |<tau(x_s), psi>| wins:
// factors vanishing at the anchor switch off every lifted linear term.
NdeSearchResult nde_product_search(const EffectiveHamiltonian& H, int n, Workflow workflow,
                                   double anchor_x, const NdeSearchConfig& cfg = {});

// Ground vector for the permutation-free layout: the direction of the
// low-lying eigenspace with the largest middle-zero weight.
VectorXd permutation_free_ground(const SpectrumResult& spec, int n);

}  // namespace chebham

#endif  // CHEBHAM_GROUNDSTATE_HPP
