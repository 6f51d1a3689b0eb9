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

#ifndef CHEBHAM_SOLVER_HPP
#define CHEBHAM_SOLVER_HPP

#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "chebham/groundstate.hpp"
#include "chebham/measure.hpp"
#include "chebham/problem.hpp"
#include "chebham/qsvt.hpp"

namespace chebham {

enum class Method { eig, qite, qsvt };
std::string to_string(Method m);
Method method_from_string(const std::string& s);

class StageError : public std::runtime_error {
 public:
  StageError(std::string stage, const std::string& what)
      : std::runtime_error(what), stage_(std::move(stage)) {}
  const std::string& stage() const { return stage_; }

 private:
  std::string stage_;
};

struct RunOptions {
  Method method = Method::eig;
  int n_override = 0;
  long shots = 0;               // > 0: sampled interferometric evaluation
  bool interferometric = false;  // zero-shot interferometric evaluation
  std::uint64_t seed = 0;
  int grid = 201;
  double t = 0.0;               // 0: 4x the evolution-time bound (qite), 8 (qsvt)
  int degree_even = 6;
  int degree_odd = 7;
  int max_rounds = 2000;
  NdeSearchConfig nde;
};

struct GridPoint {
  double x = 0.0;
  double y = 0.0;
  double value = 0.0;
  double std_error = 0.0;
  std::optional<double> exact;
};

struct RunReport {
  std::string id;
  std::string kind;
  std::string workflow;
  std::string method;
  std::string reference;
  int n = 0;
  std::size_t dim = 0;
  double eta = 0.0;
  double s = 0.0;
  double c0 = 0.0;
  double anchor_x = 0.0, anchor_y = 0.0, anchor_value = 0.0;
  double lambda_min = 0.0, lambda_2 = 0.0, lambda_max = 0.0, gap = 0.0, zero_tol = 0.0;
  int zero_space_dim = 0;
  std::optional<double> time_bound;
  std::optional<double> evolution_time;
  std::optional<double> fidelity;  // against the eigensolve ground state
  std::optional<double> fit_error;
  std::optional<int> rounds;
  std::optional<double> nde_objective;
  std::optional<double> nde_threshold;
  std::optional<int> nde_accepted;
  double residual_sup = 0.0;
  std::vector<std::pair<std::string, double>> constraint_residuals;
  std::optional<double> error_sup, error_rms, max_abs_exact;
  long shots = 0;
  std::string evaluation;
  std::vector<std::pair<std::string, double>> timings;
  std::vector<GridPoint> table;
  bool two_d = false;
  std::vector<std::string> notes;
};

struct PreparedState {
  SpectrumResult spectrum;
  SolutionModel model;
};

// Ground-state preparation plus scale recovery for a validated spec.
PreparedState prepare(const ProblemSpec& spec, const RunOptions& opt, RunReport* report = nullptr);

RunReport run(const ProblemSpec& spec, const RunOptions& opt = {});

// Sup-norm of the governing-equation residual of f_Q* on the grid.
double de_residual(const ProblemSpec& resolved, const SolutionModel& model, int grid);

void write_csv(std::ostream& out, const RunReport& r);
void write_report(std::ostream& out, const RunReport& r);

}  // namespace chebham

#endif  // CHEBHAM_SOLVER_HPP
