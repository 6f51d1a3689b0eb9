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

#ifndef CHEBHAM_CHEB_HPP
#define CHEBHAM_CHEB_HPP

#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace chebham {

template <typename Scalar>
using Mat = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
template <typename Scalar>
using Vec = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

using MatrixXd = Mat<double>;
using VectorXd = Vec<double>;

inline std::size_t dim_of(int n) {
  if (n < 0 || n > 30) throw std::out_of_range("qubit count out of range: " + std::to_string(n));
  return std::size_t{1} << n;
}

namespace detail {

template <typename Scalar>
void check_domain(const Scalar& x) {
  using std::abs;
  if (!(abs(x) <= Scalar(1))) {
    throw std::domain_error("Chebyshev argument outside [-1,1]");
  }
}

// Chebyshev series multiplied by x, in place growth by one degree.
// x T_0 = T_1 and x T_k = (T_{k+1} + T_{k-1}) / 2.
template <typename Scalar>
std::vector<Scalar> times_x(const std::vector<Scalar>& c) {
  std::vector<Scalar> out(c.size() + 1, Scalar(0));
  for (std::size_t k = 0; k < c.size(); ++k) {
    if (c[k] == Scalar(0)) continue;
    if (k == 0) {
      out[1] += c[0];
    } else {
      out[k + 1] += c[k] / Scalar(2);
      out[k - 1] += c[k] / Scalar(2);
    }
  }
  return out;
}

}  // namespace detail

/// @brief T_k(x) by the three-term recurrence.
template <typename Scalar>
Scalar chebyshev_value(int k, const Scalar& x) {
  if (k < 0) throw std::invalid_argument("negative Chebyshev degree");
  detail::check_domain(x);
  if (k == 0) return Scalar(1);
  Scalar t0(1), t1 = x;
  for (int j = 1; j < k; ++j) {
    Scalar t2 = Scalar(2) * x * t1 - t0;
    t0 = t1;
    t1 = t2;
  }
  return t1;
}

/// Roots of T_{2^n}, decreasing.
template <typename Scalar = double>
Vec<Scalar> chebyshev_nodes(int n) {
  if (n < 1) throw std::invalid_argument("n must be >= 1");
  const std::size_t N = dim_of(n);
  Vec<Scalar> x(N);
  const Scalar pi = Scalar(EIGEN_PI);
  for (std::size_t j = 0; j < N; ++j) {
    x(j) = std::cos(pi * (Scalar(j) + Scalar(0.5)) / Scalar(N));
  }
  return x;
}

/// Amplitude weight of basis function k in the n-qubit Chebyshev state.
template <typename Scalar = double>
Scalar basis_weight(int n, std::size_t k) {
  using std::pow;
  return k == 0 ? pow(Scalar(2), -Scalar(n) / Scalar(2))
                : pow(Scalar(2), -Scalar(n - 1) / Scalar(2));
}

template <typename Scalar = double>
Vec<Scalar> basis_weights(int n) {
  const std::size_t N = dim_of(n);
  Vec<Scalar> w(N);
  for (std::size_t k = 0; k < N; ++k) w(k) = basis_weight<Scalar>(n, k);
  return w;
}

/// @brief Chebyshev state |tau(x)>_n, entries w_k T_k(x).
template <typename Scalar>
Vec<Scalar> tau_state(int n, const Scalar& x) {
  detail::check_domain(x);
  const std::size_t N = dim_of(n);
  Vec<Scalar> t(N);
  Scalar t0(1), t1 = x;
  for (std::size_t k = 0; k < N; ++k) {
    Scalar tk;
    if (k == 0) {
      tk = t0;
    } else if (k == 1) {
      tk = t1;
    } else {
      tk = Scalar(2) * x * t1 - t0;
      t0 = t1;
      t1 = tk;
    }
    t(k) = basis_weight<Scalar>(n, k) * tk;
  }
  return t;
}

/// Derivative operator: <tau(x)| G^T psi = d/dx <tau(x)|psi>.
template <typename Scalar = double>
Mat<Scalar> build_G_T(int n) {
  if (n < 1) throw std::invalid_argument("n must be >= 1");
  const std::size_t N = dim_of(n);
  Mat<Scalar> G = Mat<Scalar>::Zero(N, N);
  for (std::size_t k = 1; k < N; ++k) {
    for (std::size_t j = (k % 2 == 0) ? 1 : 0; j < k; j += 2) {
      const Scalar c = (j == 0) ? Scalar(k) : Scalar(2 * k);
      G(j, k) = c * basis_weight<Scalar>(n, k) / basis_weight<Scalar>(n, j);
    }
  }
  return G;
}

/// Lifting x^p <tau(x)|_n = <tau(x)|_{n+1} M_{x^p}.
template <typename Scalar = double>
Mat<Scalar> build_M_xp(int n, int p) {
  if (n < 1) throw std::invalid_argument("n must be >= 1");
  const std::size_t N = dim_of(n);
  if (p < 0 || static_cast<std::size_t>(p) > N) {
    throw std::out_of_range("power p=" + std::to_string(p) + " outside [0, 2^n]");
  }
  Mat<Scalar> M = Mat<Scalar>::Zero(2 * N, N);
  for (std::size_t k = 0; k < N; ++k) {
    std::vector<Scalar> c(k + 1, Scalar(0));
    c[k] = Scalar(1);
    for (int q = 0; q < p; ++q) c = detail::times_x(c);
    for (std::size_t j = 0; j < c.size(); ++j) {
      if (c[j] == Scalar(0)) continue;
      M(j, k) = c[j] * basis_weight<Scalar>(n, k) / basis_weight<Scalar>(n + 1, j);
    }
  }
  return M;
}

enum class NWeight { constant, linear_x };

/// Product lifting x^a (<tau(x)|_n (x) <tau(x)|_n) = <tau(x)|_{n+1} N.
template <typename Scalar = double>
Mat<Scalar> build_N(int n, NWeight weight) {
  if (n < 1) throw std::invalid_argument("n must be >= 1");
  const std::size_t N = dim_of(n);
  Mat<Scalar> out = Mat<Scalar>::Zero(2 * N, N * N);
  for (std::size_t a = 0; a < N; ++a) {
    for (std::size_t b = 0; b < N; ++b) {
      std::vector<Scalar> c(a + b + 1, Scalar(0));
      c[a + b] += Scalar(0.5);
      c[a > b ? a - b : b - a] += Scalar(0.5);
      if (weight == NWeight::linear_x) c = detail::times_x(c);
      const Scalar wab = basis_weight<Scalar>(n, a) * basis_weight<Scalar>(n, b);
      for (std::size_t j = 0; j < c.size(); ++j) {
        if (c[j] == Scalar(0)) continue;
        out(j, a * N + b) = c[j] * wab / basis_weight<Scalar>(n + 1, j);
      }
    }
  }
  return out;
}

/// Rank-one constraint operator, first row sqrt(2^n) tau(x0).
template <typename Scalar>
Mat<Scalar> build_B(int n, const Scalar& x0) {
  const std::size_t N = dim_of(n);
  Mat<Scalar> B = Mat<Scalar>::Zero(N, N);
  B.row(0) = std::sqrt(Scalar(N)) * tau_state(n, x0).transpose();
  return B;
}

/// Regular data operator: B/value (k=0) or B G^T / value (k=1).
template <typename Scalar>
Mat<Scalar> build_D(int n, int k, const Scalar& x_s, const Scalar& value) {
  if (value == Scalar(0)) throw std::domain_error("regular constraint value must be nonzero");
  if (k != 0 && k != 1) throw std::invalid_argument("D operator order must be 0 or 1");
  Mat<Scalar> D = build_B(n, x_s) / value;
  if (k == 1) D = D * build_G_T<Scalar>(n);
  return D;
}

/// Selection of the middle-qubit-zero subspace of a (2n+1)-qubit register.
template <typename Scalar = double>
Mat<Scalar> build_Pa(int n) {
  const std::size_t N = dim_of(n);
  Mat<Scalar> P = Mat<Scalar>::Zero(N * N, 2 * N * N);
  for (std::size_t a = 0; a < N; ++a)
    for (std::size_t b = 0; b < N; ++b) P(a * N + b, a * 2 * N + b) = Scalar(1);
  return P;
}

template <typename Scalar = double>
Mat<Scalar> build_Qa(int n) {
  return build_N<Scalar>(n, NWeight::constant) * build_Pa<Scalar>(n);
}

/// Gram operator A^T A.
template <typename Derived>
Mat<typename Derived::Scalar> gram(const Eigen::MatrixBase<Derived>& A) {
  Mat<typename Derived::Scalar> H = A.transpose() * A;
  return (H + H.transpose()) / typename Derived::Scalar(2);
}

/// Evaluate <tau(x)|_n v.
template <typename Scalar, typename Derived>
Scalar latent_eval(int n, const Scalar& x, const Eigen::MatrixBase<Derived>& v) {
  return tau_state(n, x).dot(v);
}

/// Weighted Chebyshev coefficients v = c / w of a function sampled on a
/// dense Gauss-Chebyshev grid; latent_eval(n, x, v) is its truncated series.
template <typename Scalar = double, typename F>
Vec<Scalar> chebyshev_fit(int n, F&& f, int quad = 4096) {
  const std::size_t N = dim_of(n);
  const Scalar pi = Scalar(EIGEN_PI);
  Vec<Scalar> c = Vec<Scalar>::Zero(N);
  for (int i = 0; i < quad; ++i) {
    const Scalar th = pi * (Scalar(i) + Scalar(0.5)) / Scalar(quad);
    const Scalar fx = f(std::cos(th));
    for (std::size_t k = 0; k < N; ++k) c(k) += fx * std::cos(Scalar(k) * th);
  }
  c *= Scalar(2) / Scalar(quad);
  c(0) /= Scalar(2);
  return c.cwiseQuotient(basis_weights<Scalar>(n));
}

}  // namespace chebham

#endif  // CHEBHAM_CHEB_HPP
