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

#ifndef CHEBHAM_QSVT_HPP
#define CHEBHAM_QSVT_HPP

#include <complex>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "chebham/cheb.hpp"

namespace chebham {

struct BlockEncoding {
  MatrixXd unitary;
  std::string label;
  double scale = 1.0;  // recovered operator = scale * block()
  int ancilla_qubits = 1;
  int system_qubits = 0;

  MatrixXd block() const;
  MatrixXd recovered() const { return scale * block(); }
  double unitarity_defect() const;
};

// 2|0><0| - I on q qubits.
MatrixXd build_reflection(int q);

// Symmetric square root of a PSD matrix; eigenvalues below -1e-12
// (relative) are an error.
MatrixXd psd_sqrt(const MatrixXd& S);

// [[A, sqrt(I - A A^T)], [sqrt(I - A^T A), -A^T]] for a contraction A.
MatrixXd dilation(const MatrixXd& A);

BlockEncoding block_encode_dense(const MatrixXd& H);
BlockEncoding block_encode_B(int n, double x0);
BlockEncoding block_encode_D(int n, double x_s, double value);

double subnormalization(const MatrixXd& M);
BlockEncoding block_encode_G(int n);

struct PhaseSequence {
  std::vector<double> even;  // d_e + 1 angles
  std::vector<double> odd;   // d_o + 1 angles
  double t = 0.0;
  double lo = 0.0;
  double hi = 1.0;
  double fit_error = 0.0;

  int degree_even() const { return static_cast<int>(even.size()) - 1; }
  int degree_odd() const { return static_cast<int>(odd.size()) - 1; }
};

// <0| S(phi_0) R(x) S(phi_1) ... R(x) S(phi_d) |0>
std::complex<double> qsp_value(const std::vector<double>& phases, double x);

// Re P_even(x) + Re P_odd(x).
double qsp_eval(const PhaseSequence& seq, double x);

double fit_error(const PhaseSequence& seq, int points = 1001);

// Angles giving p == 1.
PhaseSequence trivial_sequence(int d_even, int d_odd);

struct FitConfig {
  int restarts = 24;
  int grid = 201;
  int max_iter = 4000;
  double lo = 0.0;
  double hi = 1.0;
  double tol = 1e-3;
  std::uint64_t seed = 0;
};

struct FitResult {
  PhaseSequence seq;
  bool converged = false;  // fit_error <= tol
};

FitResult qsp_fit_angles(double t, int d_even, int d_odd, const FitConfig& cfg = {});

// Top-left block of the mixed-parity sequence on a one-ancilla encoding:
// Re p_even(H~) + Re p_odd(H~).
MatrixXd qsvt_apply(const PhaseSequence& seq, const BlockEncoding& enc);

// Same block applied to v without forming it.
VectorXd qsvt_apply_to(const PhaseSequence& seq, const BlockEncoding& enc, const VectorXd& v);

void write_phase_sequence(std::ostream& out, const PhaseSequence& seq);
PhaseSequence read_phase_sequence(std::istream& in);
PhaseSequence read_phase_sequence_file(const std::string& path);

}  // namespace chebham

#endif  // CHEBHAM_QSVT_HPP
