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

#ifndef CHEBHAM_PROBLEM_HPP
#define CHEBHAM_PROBLEM_HPP

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "chebham/cheb.hpp"

namespace chebham {

enum class Kind { ode_constant, ode_variable, ode_inhomogeneous, pde_2d, nde };
enum class Workflow { standard, permutation_free };
enum class ConstraintKind { invariant_value, invariant_derivative, regular_value, regular_derivative };

std::string to_string(Kind k);
std::string to_string(Workflow w);
std::string to_string(ConstraintKind k);
Kind kind_from_string(const std::string& s);
Workflow workflow_from_string(const std::string& s);
ConstraintKind constraint_kind_from_string(const std::string& s);

/// One term of the differential operator.
///
/// coeff holds monomial coefficients c_0 + c_1 x + ... of the multiplier.
/// For pde-2d, dx and dy are derivative orders in the first and second
/// variable. For a degree-2 nde term, factors holds the derivative orders
/// of the two factors of the product.
struct DiffTerm {
  std::vector<double> coeff{1.0};
  int dx = 0;
  int dy = 0;
  int degree = 1;
  std::vector<int> factors;

  bool operator==(const DiffTerm&) const = default;
};

/// Zero-valued (invariant) or anchoring (regular) data constraint.
/// axis is 0 for one-variable problems; for pde-2d invariant constraints
/// it names the variable the constraint pins (1: x fixed, 2: y fixed).
struct DataConstraint {
  ConstraintKind kind = ConstraintKind::invariant_value;
  double x = 0.0;
  double y = 0.0;
  int axis = 0;
  double value = 0.0;
  double weight = 1.0;

  bool operator==(const DataConstraint&) const = default;
  int order() const {
    return (kind == ConstraintKind::invariant_derivative ||
            kind == ConstraintKind::regular_derivative) ? 1 : 0;
  }
  bool is_regular() const {
    return kind == ConstraintKind::regular_value || kind == ConstraintKind::regular_derivative;
  }
};

/// Right-hand side r(x) of L[f] = r(x) as a truncated Maclaurin series.
/// expr, when non-empty, is the named form the coefficients came from.
struct SourceSpec {
  std::vector<double> coeffs;
  int pbar = 0;
  std::string expr;

  bool operator==(const SourceSpec&) const = default;
};

/// Dependent-variable shift f = fbar + c0, manufacturing fbar(at) = 0.
struct ShiftSpec {
  double c0 = 0.0;
  double at = 0.0;

  bool operator==(const ShiftSpec&) const = default;
};

struct ProblemSpec {
  std::string id;
  Kind kind = Kind::ode_constant;
  int n = 2;
  std::vector<DiffTerm> terms;
  std::optional<SourceSpec> source;
  std::vector<DataConstraint> invariants;
  DataConstraint regular{ConstraintKind::regular_value, 0.0, 0.0, 0, 1.0, 1.0};
  Workflow workflow = Workflow::standard;
  std::optional<ShiftSpec> shift;
  std::string reference;

  bool operator==(const ProblemSpec&) const = default;
};

/// Throws std::invalid_argument naming the violated invariant.
void validate(const ProblemSpec& spec);

/// Latent operator plus a human-readable label.
struct LabeledOperator {
  std::string label;
  MatrixXd op;
  double weight = 1.0;
};

struct EffectiveHamiltonian {
  MatrixXd matrix;
  std::vector<LabeledOperator> constituents;
  bool doubled = false;
  int energy_power = 1;
  std::size_t dim() const { return static_cast<std::size_t>(matrix.rows()); }
};

/// Polynomial multiplier sum_p c_p M_{x^p}.
MatrixXd lift_poly(const std::vector<double>& coeff, int n);

MatrixXd assemble_ode_constant(double a, double b, double c, int n);
MatrixXd assemble_ode_variable(const std::vector<DiffTerm>& terms, int n);
MatrixXd assemble_inhomogeneous(const std::vector<DiffTerm>& terms, const SourceSpec& source,
                                const DataConstraint& regular, int n);
MatrixXd assemble_pde(const std::vector<DiffTerm>& terms, int n, Workflow workflow);
MatrixXd assemble_nde(const std::vector<DiffTerm>& terms, const std::optional<SourceSpec>& source,
                      const DataConstraint& regular, int n, Workflow workflow);
std::vector<LabeledOperator> assemble_constraints(const std::vector<DataConstraint>& constraints,
                                                  Kind kind, int n, Workflow workflow,
                                                  const DataConstraint* regular = nullptr);

/// Governing operator for any kind.
MatrixXd assemble(const ProblemSpec& spec);

EffectiveHamiltonian build_hamiltonian(const LabeledOperator& A,
                                       const std::vector<LabeledOperator>& constraints,
                                       bool doubled = false);
EffectiveHamiltonian build_hamiltonian(const ProblemSpec& spec);

/// Rewrites an nde spec in fbar = f - c0 and adds the invariant fbar(at) = 0.
ProblemSpec shift_transform(const ProblemSpec& spec, double c0, double at);
/// Applies spec.shift if present, otherwise returns spec unchanged.
ProblemSpec resolve_shift(const ProblemSpec& spec);

}  // namespace chebham

#endif  // CHEBHAM_PROBLEM_HPP
