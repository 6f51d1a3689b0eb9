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

#ifndef CHEBHAM_MEASURE_HPP
#define CHEBHAM_MEASURE_HPP

#include <random>
#include <string>

#include "chebham/problem.hpp"

namespace chebham {

// Real orthogonal U(x) on n+1 qubits with U(x)|0> = |0_a> tau(x)/sqrt(2)
// + sqrt(1 - |tau|^2/2) |1_a 0>, completed by a Householder reflection.
MatrixXd feature_map_unitary(int n, double x);

// Scaled latent model. Linear kinds: f_Q = scale * <tau(x), psi> + c0 with
// scale = s. 2D: <tau(x) (x) tau(y), Psi>. NDE: the raw overlap is
// <tau(x_s) (x) tau(x), Psi> and scale = eta / f(x_s).
struct SolutionModel {
  Kind kind = Kind::ode_constant;
  int n = 2;
  Workflow workflow = Workflow::standard;
  VectorXd ground;
  double s = 1.0;  // signed square root of eta (NDE: f(x_s) / f_q(x_s))
  double eta = 1.0;
  double scale = 1.0;
  double c0 = 0.0;
  double anchor_x = 0.0;
  double anchor_y = 0.0;
  double anchor_value = 1.0;
  bool nde() const { return kind == Kind::nde; }
  bool two_d() const { return kind == Kind::pde_2d; }
};

struct OverlapEstimate {
  double value = 0.0;
  std::string method = "direct";
  long shots = 0;
  double std_error = 0.0;
};

// Ground state reduced to the standard N^2 layout (permutation-free states
// keep only their middle-zero part).
VectorXd standard_layout(const SolutionModel& model);

// Unscaled overlap f_q*.
OverlapEstimate overlap_direct(const SolutionModel& model, double x, double y = 0.0);
double overlap_derivative(const SolutionModel& model, double x);

// f_Q* including c0.
double model_value(const SolutionModel& model, double x, double y = 0.0);

// Sets s, eta and scale from the regular constraint f(x_s) = value
// (order 1: f'(x_s) = value, linear 1D kinds only).
void recover_scale(SolutionModel& model, double x_s, double value, int order = 0, double y_s = 0.0);

// Interferometric reconstructions of scale * f_q*. shots = 0 gives the
// exact probabilities; otherwise each probability is a binomial mean.
OverlapEstimate interferometric_1d(const SolutionModel& model, double x, long shots, std::mt19937_64* rng);
OverlapEstimate interferometric_1d_positive(const SolutionModel& model, double x, long shots,
                                            std::mt19937_64* rng, int sign);
OverlapEstimate interferometric_2d(const SolutionModel& model, double x, double y, long shots,
                                   std::mt19937_64* rng);
OverlapEstimate interferometric_nde(const SolutionModel& model, double x, long shots, std::mt19937_64* rng);
OverlapEstimate interferometric(const SolutionModel& model, double x, double y, long shots, std::mt19937_64* rng);

}  // namespace chebham

#endif  // CHEBHAM_MEASURE_HPP
