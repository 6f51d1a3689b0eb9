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

#ifndef CHEBHAM_REGISTRY_HPP
#define CHEBHAM_REGISTRY_HPP

#include <functional>
#include <string>
#include <vector>

#include "chebham/cheb.hpp"

namespace chebham {

struct AnalyticSolution {
  std::string name;
  std::string formula;
  bool two_d = false;
  std::function<double(double, double)> f;
};

// Looks up a closed-form (or bundled numerical) reference by name; throws
// std::out_of_range for unknown names.
const AnalyticSolution& find_reference(const std::string& name);
std::vector<std::string> reference_names();

double legendre_p(int l, double x);
double legendre_dp(int l, double x);
// Associated Legendre P_l^1 with the Condon-Shortley phase.
double assoc_legendre_p1(int l, double x);

// Chebyshev-Lobatto collocation solution of f'' = 2 f^2 - x with
// f(-1) = -0.1, f(1) = 0.1, solved by Newton iteration.
class BvpSolution {
 public:
  explicit BvpSolution(int points = 64);
  double operator()(double x) const;
  double zero() const;  // the zero crossing in [-0.5, 0.5]
  double newton_residual() const { return residual_; }

 private:
  VectorXd nodes_, values_, bary_;
  double residual_ = 0.0;
};

const BvpSolution& nde2_reference();

}  // namespace chebham

#endif  // CHEBHAM_REGISTRY_HPP
