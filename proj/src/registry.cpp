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

#include "chebham/registry.hpp"

#include <cmath>
#include <map>
#include <stdexcept>

namespace chebham {

namespace {

constexpr double kPi = EIGEN_PI;

AnalyticSolution one_d(std::string name, std::string formula, std::function<double(double)> f) {
  return {std::move(name), std::move(formula), false, [f](double x, double) { return f(x); }};
}

std::map<std::string, AnalyticSolution> build_registry() {
  std::map<std::string, AnalyticSolution> r;
  auto add = [&](AnalyticSolution s) { r.emplace(s.name, std::move(s)); };
  const double s7 = std::sqrt(7.0), s191 = std::sqrt(191.0);

  add(one_d("cde-repeated", "0.5*(exp(-2x) + x*exp(-2x))",
            [](double x) { return 0.5 * (std::exp(-2 * x) + x * std::exp(-2 * x)); }));
  add(one_d("cde-distinct", "0.25*(exp(3x) - exp(-x))",
            [](double x) { return 0.25 * (std::exp(3 * x) - std::exp(-x)); }));
  add(one_d("cde-complex", "exp(-2.5x)*(cos(15 sqrt7 x/2) + sqrt7/21 sin(15 sqrt7 x/2))", [s7](double x) {
    const double w = 15.0 * s7 / 2.0;
    return std::exp(-2.5 * x) * (std::cos(w * x) + s7 / 21.0 * std::sin(w * x));
  }));
  add(one_d("cde-double-root", "0.5 exp(2x) - 1.5 x exp(2x)",
            [](double x) { return 0.5 * std::exp(2 * x) - 1.5 * x * std::exp(2 * x); }));
  add(one_d("cde-real-roots", "0.25*(exp(-3x) + exp(x))",
            [](double x) { return 0.25 * (std::exp(-3 * x) + std::exp(x)); }));
  add(one_d("cde-damped", "2 exp(-x) - exp(-2x)", [](double x) { return 2 * std::exp(-x) - std::exp(-2 * x); }));
  add(one_d("cde-growing-oscillation", "exp(1.5x)*(cos(sqrt191 x/2) - 4/sqrt191 sin(sqrt191 x/2))", [s191](double x) {
    const double w = s191 / 2.0;
    return std::exp(1.5 * x) * (std::cos(w * x) - 4.0 / s191 * std::sin(w * x));
  }));

  for (int l = 0; l <= 8; ++l) {
    add(one_d("legendre-l" + std::to_string(l) + "-m0", "P_" + std::to_string(l) + "(x)",
              [l](double x) { return legendre_p(l, x); }));
    if (l >= 1)
      add(one_d("legendre-l" + std::to_string(l) + "-m1", "P_" + std::to_string(l) + "^1(x)",
                [l](double x) { return assoc_legendre_p1(l, x); }));
  }

  add(one_d("ide-variable", "1.5 exp(x) - x(8x+13)/8 - 1",
            [](double x) { return 1.5 * std::exp(x) - x * (8 * x + 13) / 8.0 - 1.0; }));
  add(one_d("ide-repeated", "0.5 exp(-2x)(x^2 - 2x - 2)",
            [](double x) { return 0.5 * std::exp(-2 * x) * (x * x - 2 * x - 2); }));
  add(one_d("ide-distinct", "(4 exp(3x) - exp(2x)(3x^2 + 6x + 2))/6",
            [](double x) { return (4 * std::exp(3 * x) - std::exp(2 * x) * (3 * x * x + 6 * x + 2)) / 6.0; }));
  add(one_d("ide-complex", "exp(-2x)(-4(x^2+16)cos4x + (x-48)sin4x)/64", [](double x) {
    return std::exp(-2 * x) * (-4 * (x * x + 16) * std::cos(4 * x) + (x - 48) * std::sin(4 * x)) / 64.0;
  }));

  add({"laplace", "cos(pi x/2) sinh(pi(y+1)/2)/sinh(pi)", true,
       [](double x, double y) { return std::cos(kPi * x / 2) * std::sinh(kPi * (y + 1) / 2) / std::sinh(kPi); }});
  add({"heat", "exp(-4 pi^2 t/25) sin(2 pi x)", true,
       [](double t, double x) { return std::exp(-4 * kPi * kPi * t / 25.0) * std::sin(2 * kPi * x); }});
  add({"wave", "cos(4 pi t) sin(2 pi x)", true,
       [](double t, double x) { return std::cos(4 * kPi * t) * std::sin(2 * kPi * x); }});

  add(one_d("nde-even", "1 - x^2/8", [](double x) { return 1.0 - x * x / 8.0; }));
  add(one_d("nde-bvp", "numerical solution of f'' = 2f^2 - x, f(-1) = -0.1, f(1) = 0.1",
            [](double x) { return nde2_reference()(x); }));
  add(one_d("nde-cubic", "-(x-3)^3/27", [](double x) { return -std::pow(x - 3.0, 3) / 27.0; }));
  return r;
}

const std::map<std::string, AnalyticSolution>& registry() {
  static const auto r = build_registry();
  return r;
}

}  // namespace

const AnalyticSolution& find_reference(const std::string& name) {
  auto it = registry().find(name);
  if (it == registry().end()) throw std::out_of_range("no analytic reference named '" + name + "'");
  return it->second;
}

std::vector<std::string> reference_names() {
  std::vector<std::string> out;
  for (const auto& [k, v] : registry()) out.push_back(k);
  return out;
}

double legendre_p(int l, double x) {
  if (l < 0) throw std::invalid_argument("negative Legendre degree");
  double p0 = 1.0, p1 = x;
  if (l == 0) return p0;
  for (int k = 1; k < l; ++k) {
    const double p2 = ((2 * k + 1) * x * p1 - k * p0) / (k + 1);
    p0 = p1;
    p1 = p2;
  }
  return p1;
}

double legendre_dp(int l, double x) {
  // P'_{k+1} = P'_{k-1} + (2k+1) P_k
  if (l <= 0) return 0.0;
  double d0 = 0.0, d1 = 1.0;
  for (int k = 1; k < l; ++k) {
    const double d2 = d0 + (2 * k + 1) * legendre_p(k, x);
    d0 = d1;
    d1 = d2;
  }
  return d1;
}

double assoc_legendre_p1(int l, double x) {
  return -std::sqrt(std::max(0.0, 1.0 - x * x)) * legendre_dp(l, x);
}

BvpSolution::BvpSolution(int points) {
  const int M = points;
  nodes_.resize(M + 1);
  for (int j = 0; j <= M; ++j) nodes_(j) = std::cos(kPi * j / M);
  // Lobatto differentiation matrix.
  VectorXd c = VectorXd::Ones(M + 1);
  c(0) = c(M) = 2.0;
  for (int j = 1; j <= M; j += 2) c(j) = -c(j);
  MatrixXd D(M + 1, M + 1);
  for (int i = 0; i <= M; ++i)
    for (int j = 0; j <= M; ++j)
      D(i, j) = i == j ? 0.0 : (c(i) / c(j)) / (nodes_(i) - nodes_(j));
  for (int i = 0; i <= M; ++i) D(i, i) = -D.row(i).sum();
  const MatrixXd D2 = D * D;

  VectorXd u = 0.1 * nodes_;
  for (int it = 0; it < 50; ++it) {
    VectorXd F = D2 * u - 2.0 * u.cwiseProduct(u) + nodes_;
    MatrixXd J = D2;
    J.diagonal() -= 4.0 * u;
    F(0) = u(0) - 0.1;
    F(M) = u(M) + 0.1;
    J.row(0).setZero();
    J.row(M).setZero();
    J(0, 0) = 1.0;
    J(M, M) = 1.0;
    const VectorXd du = J.partialPivLu().solve(F);
    u -= du;
    residual_ = F.cwiseAbs().maxCoeff();
    if (du.cwiseAbs().maxCoeff() < 1e-15) break;
  }
  values_ = u;
  bary_ = VectorXd::Ones(M + 1);
  for (int j = 1; j <= M; j += 2) bary_(j) = -1.0;
  bary_(0) *= 0.5;
  bary_(M) *= 0.5;
}

double BvpSolution::operator()(double x) const {
  double num = 0.0, den = 0.0;
  for (Eigen::Index j = 0; j < nodes_.size(); ++j) {
    const double d = x - nodes_(j);
    if (d == 0.0) return values_(j);
    num += bary_(j) / d * values_(j);
    den += bary_(j) / d;
  }
  return num / den;
}

double BvpSolution::zero() const {
  double a = -0.5, b = 0.5;
  double fa = (*this)(a);
  for (int i = 0; i < 200 && b - a > 1e-17; ++i) {
    const double m = 0.5 * (a + b), fm = (*this)(m);
    if ((fm < 0) == (fa < 0)) {
      a = m;
      fa = fm;
    } else {
      b = m;
    }
  }
  return 0.5 * (a + b);
}

const BvpSolution& nde2_reference() {
  static const BvpSolution s(64);
  return s;
}

}  // namespace chebham
