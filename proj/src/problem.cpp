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

#include "chebham/problem.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

#include <unsupported/Eigen/KroneckerProduct>

namespace chebham {

namespace {

const char* kKindNames[] = {"ode-constant", "ode-variable", "ode-inhomogeneous", "pde-2d", "nde"};
const char* kConstraintNames[] = {"invariant-value", "invariant-derivative", "regular-value",
                                  "regular-derivative"};

MatrixXd kron(const MatrixXd& a, const MatrixXd& b) {
  return Eigen::kroneckerProduct(a, b).eval();
}

MatrixXd gpow(const MatrixXd& G, int k) {
  if (k < 0) throw std::invalid_argument("negative derivative order");
  MatrixXd out = MatrixXd::Identity(G.rows(), G.cols());
  for (int i = 0; i < k; ++i) out = G * out;
  return out;
}

bool in_domain(double x) { return std::abs(x) <= 1.0; }

std::string fmt_loc(double x) {
  std::ostringstream os;
  os.precision(6);
  os << x;
  return os.str();
}

// Trailing zeros do not count towards the polynomial degree.
int poly_degree(const std::vector<double>& c) {
  for (int i = static_cast<int>(c.size()) - 1; i >= 0; --i)
    if (c[static_cast<std::size_t>(i)] != 0.0) return i;
  return -1;
}

MatrixXd lift_doubled(int n, int p, Workflow wf) {
  MatrixXd Np = build_N<double>(n, p == 0 ? NWeight::constant : NWeight::linear_x);
  if (wf == Workflow::permutation_free) Np = Np * build_Pa<double>(n);
  return Np;
}

// X (x) Y on the doubled register, with the middle identity leg for the
// permutation-free layout.
MatrixXd pair_op(const MatrixXd& X, const MatrixXd& Y, Workflow wf) {
  if (wf == Workflow::permutation_free) return kron(X, kron(MatrixXd::Identity(2, 2), Y));
  return kron(X, Y);
}

}  // namespace

std::string to_string(Kind k) { return kKindNames[static_cast<int>(k)]; }
std::string to_string(Workflow w) {
  return w == Workflow::standard ? "standard" : "permutation-free";
}
std::string to_string(ConstraintKind k) { return kConstraintNames[static_cast<int>(k)]; }

Kind kind_from_string(const std::string& s) {
  for (int i = 0; i < 5; ++i)
    if (s == kKindNames[i]) return static_cast<Kind>(i);
  throw std::invalid_argument("unknown kind '" + s + "'");
}

Workflow workflow_from_string(const std::string& s) {
  if (s == "standard") return Workflow::standard;
  if (s == "permutation-free") return Workflow::permutation_free;
  throw std::invalid_argument("unknown workflow '" + s + "'");
}

ConstraintKind constraint_kind_from_string(const std::string& s) {
  for (int i = 0; i < 4; ++i)
    if (s == kConstraintNames[i]) return static_cast<ConstraintKind>(i);
  throw std::invalid_argument("unknown constraint kind '" + s + "'");
}

void validate(const ProblemSpec& spec) {
  auto fail = [&](const std::string& what) {
    throw std::invalid_argument("spec '" + spec.id + "': " + what);
  };
  if (spec.n < 1 || spec.n > 10) fail("n must lie in [1, 10]");
  const int cap = 1 << spec.n;
  if (spec.terms.empty()) fail("at least one term is required");

  for (const auto& t : spec.terms) {
    const int deg = poly_degree(t.coeff);
    if (deg < 0) fail("term with all-zero coefficients");
    if (t.dx < 0 || t.dy < 0) fail("negative derivative order");
    if (t.degree != 1 && t.degree != 2) fail("term degree must be 1 or 2");
    if (t.degree == 2 && spec.kind != Kind::nde) fail("degree-2 terms require kind nde");
    if (t.degree == 2 && (t.factors.size() != 2 || t.factors[0] < 0 || t.factors[1] < 0))
      fail("degree-2 term needs two nonnegative factor orders");
    if (t.dy != 0 && spec.kind != Kind::pde_2d) fail("dy is only meaningful for pde-2d");
    switch (spec.kind) {
      case Kind::ode_constant:
      case Kind::pde_2d:
        if (deg > 0) fail("coefficients must be constant for " + to_string(spec.kind));
        break;
      case Kind::ode_variable:
      case Kind::ode_inhomogeneous:
        if (deg > cap) fail("coefficient degree exceeds power cap 2^n");
        break;
      case Kind::nde:
        if (deg > 1) fail("nde coefficients are limited to degree 1");
        break;
    }
  }

  if (spec.kind == Kind::ode_inhomogeneous && !spec.source) fail("ode-inhomogeneous requires a source");
  if (spec.source) {
    if (spec.kind != Kind::ode_inhomogeneous && spec.kind != Kind::nde)
      fail("source only allowed for ode-inhomogeneous and nde");
    const auto& s = *spec.source;
    if (s.pbar < 0 || s.pbar > cap) fail("source truncation order p_bar exceeds power cap 2^n");
    if (static_cast<int>(s.coeffs.size()) != s.pbar + 1) fail("source needs p_bar + 1 coefficients");
    if (spec.kind == Kind::nde && poly_degree(s.coeffs) > 1) fail("nde source limited to degree 1");
  }

  for (const auto& c : spec.invariants) {
    if (c.is_regular()) fail("regular constraint listed among invariant constraints");
    if (c.value != 0.0) fail("invariant constraints carry value 0");
    if (!in_domain(c.x) || !in_domain(c.y)) fail("constraint location outside [-1,1]");
    if (c.weight <= 0.0) fail("constraint weight must be positive");
    if (spec.kind == Kind::pde_2d && c.axis != 1 && c.axis != 2)
      fail("pde-2d invariant constraints need axis 1 or 2");
  }
  if (spec.invariants.empty() && !(spec.shift && spec.shift->c0 != 0.0))
    fail("at least one invariant constraint is required");

  const auto& r = spec.regular;
  if (!r.is_regular()) fail("regular constraint has an invariant kind");
  if (r.value == 0.0) fail("regular constraint value must be nonzero");
  if (!in_domain(r.x) || !in_domain(r.y)) fail("regular constraint location outside [-1,1]");
  if (spec.kind == Kind::nde && r.kind != ConstraintKind::regular_value)
    fail("nde requires a regular-value constraint to lift linear terms");
  if (spec.kind == Kind::pde_2d && r.kind != ConstraintKind::regular_value)
    fail("pde-2d supports regular-value anchors only");

  if (spec.shift) {
    if (spec.kind != Kind::nde) fail("shift is only supported for nde");
    if (!in_domain(spec.shift->at)) fail("shift location outside [-1,1]");
  }
  if (spec.workflow == Workflow::permutation_free && spec.kind != Kind::pde_2d && spec.kind != Kind::nde)
    fail("permutation-free workflow applies to pde-2d and nde only");
}

MatrixXd lift_poly(const std::vector<double>& coeff, int n) {
  const std::size_t N = dim_of(n);
  MatrixXd out = MatrixXd::Zero(2 * N, N);
  for (std::size_t p = 0; p < coeff.size(); ++p)
    if (coeff[p] != 0.0) out += coeff[p] * build_M_xp<double>(n, static_cast<int>(p));
  return out;
}

MatrixXd assemble_ode_constant(double a, double b, double c, int n) {
  const MatrixXd G = build_G_T<double>(n);
  return a * G * G + b * G + c * MatrixXd::Identity(G.rows(), G.cols());
}

MatrixXd assemble_ode_variable(const std::vector<DiffTerm>& terms, int n) {
  if (terms.empty()) throw std::invalid_argument("no terms");
  const MatrixXd G = build_G_T<double>(n);
  const std::size_t N = dim_of(n);
  MatrixXd A = MatrixXd::Zero(2 * N, N);
  for (const auto& t : terms) A += lift_poly(t.coeff, n) * gpow(G, t.dx);
  return A;
}

MatrixXd assemble_inhomogeneous(const std::vector<DiffTerm>& terms, const SourceSpec& source,
                                const DataConstraint& regular, int n) {
  if (regular.value == 0.0) throw std::domain_error("regular constraint value must be nonzero");
  const MatrixXd D = build_D<double>(n, regular.order(), regular.x, regular.value);
  return assemble_ode_variable(terms, n) - lift_poly(source.coeffs, n) * D;
}

MatrixXd assemble_pde(const std::vector<DiffTerm>& terms, int n, Workflow workflow) {
  const MatrixXd G = build_G_T<double>(n);
  const std::size_t N = dim_of(n);
  MatrixXd A = MatrixXd::Zero(N * N, N * N);
  for (const auto& t : terms) A += t.coeff.at(0) * kron(gpow(G, t.dx), gpow(G, t.dy));
  if (workflow == Workflow::permutation_free) A = A * build_Pa<double>(n);
  return A;
}

MatrixXd assemble_nde(const std::vector<DiffTerm>& terms, const std::optional<SourceSpec>& source,
                      const DataConstraint& regular, int n, Workflow workflow) {
  if (regular.kind != ConstraintKind::regular_value || regular.value == 0.0)
    throw std::invalid_argument("nde assembly needs a nonzero regular-value constraint");
  bool has_quadratic = false;
  for (const auto& t : terms) has_quadratic |= (t.degree == 2);
  if (!has_quadratic) throw std::invalid_argument("nde assembly needs a degree-2 term");

  const MatrixXd G = build_G_T<double>(n);
  const MatrixXd D0 = build_D<double>(n, 0, regular.x, regular.value);
  const std::size_t N = dim_of(n);
  const std::size_t cols = workflow == Workflow::permutation_free ? 2 * N * N : N * N;
  MatrixXd A = MatrixXd::Zero(2 * N, cols);
  const MatrixXd lift[2] = {lift_doubled(n, 0, workflow), lift_doubled(n, 1, workflow)};

  for (const auto& t : terms) {
    const MatrixXd inner = t.degree == 1 ? pair_op(D0, gpow(G, t.dx), workflow)
                                         : pair_op(gpow(G, t.factors[0]), gpow(G, t.factors[1]), workflow);
    for (std::size_t p = 0; p < t.coeff.size() && p < 2; ++p)
      if (t.coeff[p] != 0.0) A += t.coeff[p] * lift[p] * inner;
  }
  if (source) {
    const MatrixXd dd = pair_op(D0, D0, workflow);
    for (std::size_t p = 0; p < source->coeffs.size() && p < 2; ++p)
      if (source->coeffs[p] != 0.0) A -= source->coeffs[p] * lift[p] * dd;
  }
  return A;
}

std::vector<LabeledOperator> assemble_constraints(const std::vector<DataConstraint>& constraints,
                                                  Kind kind, int n, Workflow workflow,
                                                  const DataConstraint* regular) {
  const MatrixXd G = build_G_T<double>(n);
  const std::size_t N = dim_of(n);
  const MatrixXd I = MatrixXd::Identity(N, N);
  std::vector<LabeledOperator> out;
  for (const auto& c : constraints) {
    if (!in_domain(c.x) || !in_domain(c.y)) throw std::domain_error("constraint location outside [-1,1]");
    const int k = c.order();
    const std::string gk = k ? "G" : "";
    LabeledOperator L;
    L.weight = c.weight;
    switch (kind) {
      case Kind::ode_constant:
        L.op = build_B(n, c.x) * gpow(G, k);
        L.label = "B(" + fmt_loc(c.x) + ")" + gk;
        break;
      case Kind::ode_variable:
      case Kind::ode_inhomogeneous:
        L.op = build_B(n + 1, c.x) * build_M_xp<double>(n, 0) * gpow(G, k);
        L.label = "B1(" + fmt_loc(c.x) + ")M1" + gk;
        break;
      case Kind::pde_2d:
        if (c.axis == 1) {
          L.op = kron(build_B(n, c.x) * gpow(G, k), I);
          L.label = "B(" + fmt_loc(c.x) + ")" + gk + "(x)I";
        } else if (c.axis == 2) {
          L.op = kron(I, build_B(n, c.y) * gpow(G, k));
          L.label = "I(x)B(" + fmt_loc(c.y) + ")" + gk;
        } else {
          throw std::invalid_argument("pde-2d constraint needs axis 1 or 2");
        }
        if (workflow == Workflow::permutation_free) L.op = L.op * build_Pa<double>(n);
        break;
      case Kind::nde: {
        if (!regular) throw std::invalid_argument("nde constraints need the regular constraint");
        const MatrixXd D0 = build_D<double>(n, 0, regular->x, regular->value);
        L.op = lift_doubled(n, 0, workflow) * pair_op(D0, build_B(n, c.x) * gpow(G, k), workflow);
        L.label = "N1(D0(x)B(" + fmt_loc(c.x) + ")" + gk + ")";
        break;
      }
    }
    out.push_back(std::move(L));
  }
  return out;
}

MatrixXd assemble(const ProblemSpec& spec) {
  switch (spec.kind) {
    case Kind::ode_constant: {
      const MatrixXd G = build_G_T<double>(spec.n);
      MatrixXd A = MatrixXd::Zero(G.rows(), G.cols());
      for (const auto& t : spec.terms) A += t.coeff.at(0) * gpow(G, t.dx);
      return A;
    }
    case Kind::ode_variable:
      return assemble_ode_variable(spec.terms, spec.n);
    case Kind::ode_inhomogeneous:
      return assemble_inhomogeneous(spec.terms, *spec.source, spec.regular, spec.n);
    case Kind::pde_2d:
      return assemble_pde(spec.terms, spec.n, spec.workflow);
    case Kind::nde:
      return assemble_nde(spec.terms, spec.source, spec.regular, spec.n, spec.workflow);
  }
  throw std::logic_error("unreachable");
}

EffectiveHamiltonian build_hamiltonian(const LabeledOperator& A,
                                       const std::vector<LabeledOperator>& constraints,
                                       bool doubled) {
  EffectiveHamiltonian H;
  H.matrix = A.weight * gram(A.op);
  H.constituents.push_back(A);
  for (const auto& c : constraints) {
    if (c.op.cols() != A.op.cols())
      throw std::invalid_argument("constraint '" + c.label + "' column dimension mismatch");
    H.matrix += c.weight * gram(c.op);
    H.constituents.push_back(c);
  }
  H.doubled = doubled;
  H.energy_power = doubled ? 2 : 1;
  return H;
}

EffectiveHamiltonian build_hamiltonian(const ProblemSpec& raw) {
  const ProblemSpec spec = resolve_shift(raw);
  validate(spec);
  LabeledOperator A{"A", assemble(spec), 1.0};
  auto cons = assemble_constraints(spec.invariants, spec.kind, spec.n, spec.workflow, &spec.regular);
  return build_hamiltonian(A, cons, spec.kind == Kind::nde);
}

ProblemSpec shift_transform(const ProblemSpec& spec, double c0, double at) {
  ProblemSpec out = spec;
  out.shift.reset();
  if (c0 == 0.0) return out;
  if (spec.kind != Kind::nde) throw std::invalid_argument("shift is only supported for nde");
  for (const auto& c : spec.invariants)
    if (c.kind == ConstraintKind::invariant_value)
      throw std::invalid_argument("value constraints stop being invariant under a shift");

  // Constant contributions move to the right-hand side.
  std::vector<double> moved(2, 0.0);
  std::vector<DiffTerm> terms;
  for (const auto& t : spec.terms) {
    terms.push_back(t);
    if (t.degree == 1) {
      if (t.dx == 0)
        for (std::size_t p = 0; p < t.coeff.size() && p < 2; ++p) moved[p] += c0 * t.coeff[p];
      continue;
    }
    const int a = t.factors[0], b = t.factors[1];
    auto linear = [&](int order) {
      DiffTerm lt;
      lt.coeff = t.coeff;
      for (auto& v : lt.coeff) v *= c0;
      lt.dx = order;
      terms.push_back(lt);
    };
    if (b == 0) linear(a);
    if (a == 0) linear(b);
    if (a == 0 && b == 0)
      for (std::size_t p = 0; p < t.coeff.size() && p < 2; ++p) moved[p] += c0 * c0 * t.coeff[p];
  }
  out.terms = terms;
  if (moved[0] != 0.0 || moved[1] != 0.0) {
    SourceSpec s = spec.source.value_or(SourceSpec{{0.0}, 0, ""});
    if (s.coeffs.size() < 2) s.coeffs.resize(2, 0.0);
    for (int p = 0; p < 2; ++p) s.coeffs[static_cast<std::size_t>(p)] -= moved[static_cast<std::size_t>(p)];
    while (s.coeffs.size() > 1 && s.coeffs.back() == 0.0) s.coeffs.pop_back();
    s.pbar = static_cast<int>(s.coeffs.size()) - 1;
    s.expr.clear();
    out.source = s;
  }
  if (out.regular.kind == ConstraintKind::regular_value) out.regular.value -= c0;
  DataConstraint z;
  z.kind = ConstraintKind::invariant_value;
  z.x = at;
  out.invariants.push_back(z);
  return out;
}

ProblemSpec resolve_shift(const ProblemSpec& spec) {
  if (!spec.shift) return spec;
  return shift_transform(spec, spec.shift->c0, spec.shift->at);
}

}  // namespace chebham
