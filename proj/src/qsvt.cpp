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

#include "chebham/qsvt.hpp"

#include <cmath>
#include <fstream>
#include <istream>
#include <limits>
#include <map>
#include <ostream>
#include <random>
#include <sstream>
#include <stdexcept>

#include <unsupported/Eigen/NonLinearOptimization>
#include <unsupported/Eigen/NumericalDiff>

#include "chebham/measure.hpp"
#include "chebham/spec_io.hpp"

namespace chebham {

namespace {

using Cplx = std::complex<double>;
using MatrixXc = Eigen::MatrixXcd;

void check_parity(const PhaseSequence& seq) {
  if (seq.even.empty() || seq.degree_even() % 2 != 0)
    throw std::invalid_argument("phase sequence: even branch needs an even degree");
  if (seq.odd.size() < 2 || seq.degree_odd() % 2 != 1)
    throw std::invalid_argument("phase sequence: odd branch needs an odd degree");
}

// Projector-controlled phase: e^{i phi} on the encoded block, e^{-i phi} elsewhere.
void apply_phase(MatrixXc& X, Eigen::Index D, double phi) {
  const Cplx a = std::polar(1.0, phi), b = std::polar(1.0, -phi);
  X.topRows(D) *= a;
  X.bottomRows(X.rows() - D) *= b;
}

MatrixXc apply_sequence(const std::vector<double>& phases, double sign, const MatrixXd& U, Eigen::Index D,
                        const MatrixXc& X0) {
  MatrixXc X = X0;
  const MatrixXc Uc = U.cast<Cplx>();
  const auto d = static_cast<Eigen::Index>(phases.size()) - 1;
  apply_phase(X, D, sign * phases[static_cast<std::size_t>(d)]);
  for (Eigen::Index k = d - 1; k >= 0; --k) {
    X = Uc * X;
    apply_phase(X, D, sign * phases[static_cast<std::size_t>(k)]);
  }
  return X;
}

// Real part of the block through the sequence and its conjugate.
MatrixXd branch(const std::vector<double>& phases, const BlockEncoding& enc, const MatrixXd& X) {
  const Eigen::Index D = X.rows() / 2;
  const MatrixXc Xc = X.cast<Cplx>();
  const MatrixXc w = apply_sequence(phases, 1.0, enc.unitary, D, Xc);
  const MatrixXc wc = apply_sequence(phases, -1.0, enc.unitary, D, Xc);
  return ((w + wc) / 2.0).topRows(D).real();
}

struct FitFunctor {
  using Scalar = double;
  enum { InputsAtCompileTime = Eigen::Dynamic, ValuesAtCompileTime = Eigen::Dynamic };
  using InputType = VectorXd;
  using ValueType = VectorXd;
  using JacobianType = MatrixXd;

  int n_in = 0;
  VectorXd grid, target;
  int de = 0;
  int inputs() const { return n_in; }
  int values() const { return static_cast<int>(grid.size()); }
  int operator()(const VectorXd& th, VectorXd& r) const {
    PhaseSequence s;
    s.even.assign(th.data(), th.data() + de + 1);
    s.odd.assign(th.data() + de + 1, th.data() + th.size());
    for (Eigen::Index i = 0; i < grid.size(); ++i) r(i) = qsp_eval(s, grid(i)) - target(i);
    return 0;
  }
};

}  // namespace

MatrixXd BlockEncoding::block() const {
  const auto D = static_cast<Eigen::Index>(dim_of(system_qubits));
  return unitary.topLeftCorner(D, D);
}

double BlockEncoding::unitarity_defect() const {
  return (unitary.transpose() * unitary - MatrixXd::Identity(unitary.rows(), unitary.cols())).cwiseAbs().maxCoeff();
}

MatrixXd build_reflection(int q) {
  if (q < 1) throw std::invalid_argument("reflection needs q >= 1");
  const auto D = static_cast<Eigen::Index>(dim_of(q));
  MatrixXd S = -MatrixXd::Identity(D, D);
  S(0, 0) = 1.0;
  return S;
}

MatrixXd psd_sqrt(const MatrixXd& S) {
  Eigen::SelfAdjointEigenSolver<MatrixXd> es((S + S.transpose()) / 2.0);
  VectorXd ev = es.eigenvalues();
  const double tol = 1e-12 * std::max(1.0, ev.cwiseAbs().maxCoeff());
  for (Eigen::Index i = 0; i < ev.size(); ++i) {
    if (ev(i) < -tol) throw std::domain_error("square root of a matrix with a negative eigenvalue");
    ev(i) = std::sqrt(std::max(0.0, ev(i)));
  }
  return es.eigenvectors() * ev.asDiagonal() * es.eigenvectors().transpose();
}

MatrixXd dilation(const MatrixXd& A) {
  if (A.rows() != A.cols()) throw std::invalid_argument("dilation needs a square matrix");
  const Eigen::Index D = A.rows();
  const MatrixXd I = MatrixXd::Identity(D, D);
  MatrixXd U(2 * D, 2 * D);
  U.topLeftCorner(D, D) = A;
  U.topRightCorner(D, D) = psd_sqrt(I - A * A.transpose());
  U.bottomLeftCorner(D, D) = psd_sqrt(I - A.transpose() * A);
  U.bottomRightCorner(D, D) = -A.transpose();
  return U;
}

BlockEncoding block_encode_dense(const MatrixXd& H) {
  const double f = H.norm();
  if (f == 0.0) throw std::invalid_argument("cannot normalize a zero matrix");
  const auto D = H.rows();
  int q = 0;
  while ((Eigen::Index{1} << q) < D) ++q;
  if ((Eigen::Index{1} << q) != D) throw std::invalid_argument("dimension must be a power of two");
  BlockEncoding enc;
  enc.unitary = dilation(H / f);
  enc.scale = f;
  enc.system_qubits = q;
  enc.ancilla_qubits = 1;
  enc.label = "H/||H||_F";
  return enc;
}

BlockEncoding block_encode_B(int n, double x0) {
  detail::check_domain(x0);
  const auto N = static_cast<Eigen::Index>(dim_of(n));
  const MatrixXd Ut = feature_map_unitary(n, x0).transpose();
  const MatrixXd I = MatrixXd::Identity(2 * N, 2 * N);
  const MatrixXd S = build_reflection(n + 1);
  // Hadamard-sandwiched select of (I, S) leaves (I + S)/2 in the top block.
  MatrixXd V(4 * N, 4 * N);
  V << (I + S) / 2.0, (I - S) / 2.0, (I - S) / 2.0, (I + S) / 2.0;
  MatrixXd W = MatrixXd::Zero(4 * N, 4 * N);
  W.topLeftCorner(2 * N, 2 * N) = Ut;
  W.bottomRightCorner(2 * N, 2 * N) = Ut;
  BlockEncoding enc;
  enc.unitary = V * W;
  enc.scale = std::sqrt(2.0 * static_cast<double>(N));
  enc.system_qubits = n;
  enc.ancilla_qubits = 2;
  enc.label = "B(" + format_number(x0) + ")";
  return enc;
}

BlockEncoding block_encode_D(int n, double x_s, double value) {
  if (value == 0.0) throw std::domain_error("regular constraint value must be nonzero");
  BlockEncoding enc = block_encode_B(n, x_s);
  enc.scale /= value;
  enc.label = "D0(" + format_number(x_s) + ")";
  return enc;
}

double subnormalization(const MatrixXd& M) {
  const MatrixXd a = M * M.transpose(), b = M.transpose() * M;
  return std::max(a.cwiseAbs().colwise().sum().maxCoeff(), b.cwiseAbs().colwise().sum().maxCoeff());
}

BlockEncoding block_encode_G(int n) {
  const MatrixXd G = build_G_T<double>(n);
  const double f = (std::ldexp(1.0, n - 1) + std::ldexp(1.0, n)) * subnormalization(G);
  BlockEncoding enc;
  enc.unitary = dilation(G / f);
  enc.scale = f;
  enc.system_qubits = n;
  enc.ancilla_qubits = 1;
  enc.label = "G^T";
  return enc;
}

std::complex<double> qsp_value(const std::vector<double>& phases, double x) {
  if (phases.empty()) throw std::invalid_argument("empty phase list");
  if (std::abs(x) > 1.0) throw std::domain_error("QSP signal outside [-1,1]");
  const double s = std::sqrt(1.0 - x * x);
  // Row vector <0| propagated through the product.
  Cplx a = std::polar(1.0, phases[0]), b = 0.0;
  for (std::size_t k = 1; k < phases.size(); ++k) {
    const Cplx na = a * x + b * s, nb = a * s - b * x;
    a = na * std::polar(1.0, phases[k]);
    b = nb * std::polar(1.0, -phases[k]);
  }
  return a;
}

double qsp_eval(const PhaseSequence& seq, double x) {
  return qsp_value(seq.even, x).real() + qsp_value(seq.odd, x).real();
}

double fit_error(const PhaseSequence& seq, int points) {
  double err = 0.0;
  for (int i = 0; i < points; ++i) {
    const double x = seq.lo + (seq.hi - seq.lo) * i / (points - 1);
    err = std::max(err, std::abs(qsp_eval(seq, x) - std::exp(-seq.t * x)));
  }
  return err;
}

PhaseSequence trivial_sequence(int d_even, int d_odd) {
  if (d_even < 0 || d_even % 2 != 0 || d_odd < 1 || d_odd % 2 != 1)
    throw std::invalid_argument("degrees must be (even, odd)");
  PhaseSequence s;
  s.even.assign(static_cast<std::size_t>(d_even) + 1, 0.0);
  s.odd.assign(static_cast<std::size_t>(d_odd) + 1, 0.0);
  // e^{i pi/4} x^d e^{i pi/4} has zero real part.
  s.odd.front() = EIGEN_PI / 4.0;
  s.odd.back() = EIGEN_PI / 4.0;
  return s;
}

FitResult qsp_fit_angles(double t, int d_even, int d_odd, const FitConfig& cfg) {
  if (!(cfg.lo >= 0.0 && cfg.lo < cfg.hi && cfg.hi <= 1.0)) throw std::invalid_argument("fit domain must satisfy 0 <= lo < hi <= 1");
  if (t < 0.0) throw std::invalid_argument("time must be nonnegative");
  const PhaseSequence base = trivial_sequence(d_even, d_odd);
  const int P = d_even + d_odd + 2;

  FitFunctor f;
  f.n_in = P;
  f.de = d_even;
  f.grid = VectorXd::LinSpaced(cfg.grid, cfg.lo, cfg.hi);
  f.target = (-t * f.grid).array().exp();
  Eigen::NumericalDiff<FitFunctor> nd(f);

  VectorXd th0(P);
  for (int i = 0; i <= d_even; ++i) th0(i) = base.even[static_cast<std::size_t>(i)];
  for (int i = 0; i <= d_odd; ++i) th0(d_even + 1 + i) = base.odd[static_cast<std::size_t>(i)];

  std::mt19937_64 rng(cfg.seed);
  std::normal_distribution<double> gauss;
  FitResult best;
  double best_err = std::numeric_limits<double>::infinity();
  for (int r = 0; r <= cfg.restarts; ++r) {
    VectorXd th = th0;
    if (r > 0) {
      const double sigma = 0.2 * (1 + r % 5);
      for (int i = 0; i < P; ++i) th(i) += sigma * gauss(rng);
    }
    if (t > 0.0) {
      Eigen::LevenbergMarquardt<Eigen::NumericalDiff<FitFunctor>> lm(nd);
      lm.parameters.maxfev = cfg.max_iter;
      lm.parameters.xtol = 1e-14;
      lm.parameters.ftol = 1e-14;
      lm.minimize(th);
    }
    PhaseSequence s;
    s.even.assign(th.data(), th.data() + d_even + 1);
    s.odd.assign(th.data() + d_even + 1, th.data() + P);
    s.t = t;
    s.lo = cfg.lo;
    s.hi = cfg.hi;
    s.fit_error = fit_error(s);
    if (s.fit_error < best_err) {
      best_err = s.fit_error;
      best.seq = s;
    }
    if (t == 0.0) break;
  }
  best.converged = best.seq.fit_error <= cfg.tol;
  return best;
}

MatrixXd qsvt_apply(const PhaseSequence& seq, const BlockEncoding& enc) {
  check_parity(seq);
  if (enc.ancilla_qubits != 1) throw std::invalid_argument("qsvt needs a one-ancilla encoding");
  const auto D = static_cast<Eigen::Index>(dim_of(enc.system_qubits));
  if (enc.unitary.rows() != 2 * D) throw std::invalid_argument("encoding dimension mismatch");
  MatrixXd X = MatrixXd::Zero(2 * D, D);
  X.topRows(D).setIdentity();
  return branch(seq.even, enc, X) + branch(seq.odd, enc, X);
}

VectorXd qsvt_apply_to(const PhaseSequence& seq, const BlockEncoding& enc, const VectorXd& v) {
  check_parity(seq);
  if (enc.ancilla_qubits != 1) throw std::invalid_argument("qsvt needs a one-ancilla encoding");
  const auto D = static_cast<Eigen::Index>(dim_of(enc.system_qubits));
  if (enc.unitary.rows() != 2 * D || v.size() != D) throw std::invalid_argument("qsvt: dimension mismatch");
  MatrixXd X = MatrixXd::Zero(2 * D, 1);
  X.topRows(D) = v;
  return branch(seq.even, enc, X) + branch(seq.odd, enc, X);
}

void write_phase_sequence(std::ostream& out, const PhaseSequence& seq) {
  auto list = [](const std::vector<double>& v) {
    std::string s;
    for (std::size_t i = 0; i < v.size(); ++i) s += (i ? " " : "") + format_number(v[i]);
    return s;
  };
  out << "# QSP phase sequence for exp(-t x)\n";
  out << "t = " << format_number(seq.t) << "\n";
  out << "domain = " << format_number(seq.lo) << " " << format_number(seq.hi) << "\n";
  out << "degree_even = " << seq.degree_even() << "\n";
  out << "degree_odd = " << seq.degree_odd() << "\n";
  out << "fit_error = " << format_number(seq.fit_error) << "\n";
  out << "even = " << list(seq.even) << "\n";
  out << "odd = " << list(seq.odd) << "\n";
}

PhaseSequence read_phase_sequence(std::istream& in) {
  std::map<std::string, std::string> kv;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (auto h = line.find('#'); h != std::string::npos) line.resize(h);
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw ParseError(lineno, "expected 'key = value'");
    std::string key = line.substr(0, eq);
    key.erase(key.find_last_not_of(" \t") + 1);
    key.erase(0, key.find_first_not_of(" \t"));
    kv[key] = line.substr(eq + 1);
  }
  auto need = [&](const std::string& k) -> const std::string& {
    auto it = kv.find(k);
    if (it == kv.end()) throw std::invalid_argument("phase sequence: missing key '" + k + "'");
    return it->second;
  };
  auto numbers = [](const std::string& s) {
    std::vector<double> v;
    std::istringstream is(s);
    std::string tok;
    while (is >> tok) v.push_back(parse_number(tok));
    return v;
  };
  PhaseSequence seq;
  seq.t = parse_number(need("t"));
  const auto dom = numbers(need("domain"));
  if (dom.size() != 2) throw std::invalid_argument("phase sequence: domain needs two numbers");
  seq.lo = dom[0];
  seq.hi = dom[1];
  seq.fit_error = parse_number(need("fit_error"));
  seq.even = numbers(need("even"));
  seq.odd = numbers(need("odd"));
  if (seq.degree_even() != static_cast<int>(parse_number(need("degree_even"))) ||
      seq.degree_odd() != static_cast<int>(parse_number(need("degree_odd"))))
    throw std::invalid_argument("phase sequence: angle count does not match declared degree");
  check_parity(seq);
  return seq;
}

PhaseSequence read_phase_sequence_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open phase file '" + path + "'");
  return read_phase_sequence(in);
}

}  // namespace chebham
