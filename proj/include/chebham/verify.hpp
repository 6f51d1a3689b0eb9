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

// Randomized identity checks for the Chebyshev operators.

#ifndef CHEBHAM_VERIFY_HPP
#define CHEBHAM_VERIFY_HPP

#include <cstdint>
#include <string>
#include <vector>

namespace chebham {

struct IdentityCheck {
  std::string name;
  int n = 0;
  double residual = 0.0;
  double tol = 1e-10;
  bool pass() const { return residual <= tol; }
};

// Every check is a max residual over `sweeps` random (x, v) draws.
std::vector<IdentityCheck> identity_suite(int n, int sweeps = 100, std::uint64_t seed = 7);

}  // namespace chebham

#endif  // CHEBHAM_VERIFY_HPP
