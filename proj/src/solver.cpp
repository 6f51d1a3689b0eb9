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

#include "chebham/solver.hpp"

#include <chrono>
#include <cmath>
#include <ostream>
#include <sstream>

#include "chebham/registry.hpp"
#include "chebham/spec_io.hpp"

namespace chebham {

namespace {

using Clock = std::chrono::steady_clock;

template <typename F>
auto staged(const char* stage, RunReport* rep, F&& f) -> decltype(f()) {
  const auto t0 = Clock::now();
  try {
    if constexpr (std::is_void_v<decltype(f())>) {
      f();
      if (rep) rep->timings.emplace_back(stage, std::chrono::duration<double>(Clock::now() - t0).count());
    } else {
      auto out = f();
      if (rep) rep->timings.emplace_back(stage, std::chrono::duration<double>(Clock::now() - t0).count());
      return out;
    }
  } catch (const StageError&) {
    throw;
  } catch (const std::exception& e) {
    throw StageError(stage, e.what());
  }
}

int qubits_of(Eigen::Index dim) {
  int q = 0;
  while ((Eigen::Index{1} << q) < dim) ++q;
  return q;
}

// Keeps the middle-zero part of a permutation-free state.
VectorXd project_middle_zero(const VectorXd& v, int n) {
  const auto N = static_cast<Eigen::Index>(dim_of(n));
  VectorXd out = VectorXd::Zero(v.size());
  for (Eigen::Index a = 0; a < N; ++a) out.segment(a * 2 * N, N) = v.segment(a * 2 * N, N);
  const double nr = out.norm();
  if (nr < 1e-12) throw std::runtime_error("state has no weight on the middle-zero subspace");
  out /= nr;
  fix_sign(out);
  return out;
}

double poly_at(const std::vector<double>& c, double x) {
  double v = 0.0;
  for (auto it = c.rbegin(); it != c.rend(); ++it) v = v * x + *it;
  return v;
}

MatrixXd gpow(const MatrixXd& G, int k) {
  MatrixXd out = MatrixXd::Identity(G.rows(), G.cols());
  for (int i = 0; i < k; ++i) out = G * out;
  return out;
}

// Scaled derivative d^dx/dx d^dy/dy of the model without the shift c0.
struct Differentiator {
  const SolutionModel& m;
  MatrixXd G;
  MatrixXd M;  // ground as an N x N matrix for 2D/NDE
  VectorXd left;  // tau(x_s)^T M for NDE
  std::map<int, MatrixXd> powers;

  explicit Differentiator(const SolutionModel& model) : m(model), G(build_G_T<double>(model.n)) {
    if (m.two_d() || m.nde()) {
      const auto N = static_cast<Eigen::Index>(dim_of(m.n));
      const VectorXd v = standard_layout(m);
      M = Eigen::Map<const MatrixXd>(v.data(), N, N).transpose();
      if (m.nde()) left = M.transpose() * tau_state(m.n, m.anchor_x);
    }
  }
  const MatrixXd& gp(int k) {
    auto it = powers.find(k);
    if (it == powers.end()) it = powers.emplace(k, gpow(G, k)).first;
    return it->second;
  }
  double operator()(double x, double y, int dx, int dy) {
    const VectorXd tx = tau_state(m.n, x);
    if (m.nde()) return m.scale * tx.dot(gp(dx) * left);
    if (m.two_d()) return m.scale * tx.dot(gp(dx) * M * gp(dy).transpose() * tau_state(m.n, y));
    return m.scale * tx.dot(gp(dx) * m.ground);
  }
};

std::string fmt(double v) { return format_number(v); }

}  // namespace

std::string to_string(Method m) {
  switch (m) {
    case Method::eig: return "eig";
    case Method::qite: return "qite";
    case Method::qsvt: return "qsvt";
  }
  return "?";
}

Method method_from_string(const std::string& s) {
  if (s == "eig") return Method::eig;
  if (s == "qite") return Method::qite;
  if (s == "qsvt") return Method::qsvt;
  throw std::invalid_argument("unknown method '" + s + "'");
}

PreparedState prepare(const ProblemSpec& spec, const RunOptions& opt, RunReport* rep) {
  const ProblemSpec resolved = staged("validate", rep, [&] {
    validate(spec);
    return resolve_shift(spec);
  });
  const EffectiveHamiltonian H = staged("assemble", rep, [&] { return build_hamiltonian(resolved); });

  PreparedState out;
  SolutionModel& m = out.model;
  m.kind = resolved.kind;
  m.n = resolved.n;
  m.workflow = resolved.workflow;
  m.c0 = spec.shift ? spec.shift->c0 : 0.0;

  staged("groundstate", rep, [&] {
    out.spectrum = eigensolve(H.matrix);
    const SpectrumResult& sp = out.spectrum;
    if (rep) {
      rep->dim = H.dim();
      rep->lambda_min = sp.lambda_min();
      rep->lambda_2 = sp.lambda_2();
      rep->lambda_max = sp.lambda_max;
      rep->gap = sp.gap;
      rep->zero_tol = sp.zero_tol;
      rep->zero_space_dim = sp.zero_space_dim;
    }
    if (m.nde()) {
      NdeSearchConfig cfg = opt.nde;
      cfg.seed = opt.seed;
      const auto r = nde_product_search(H, m.n, m.workflow, resolved.regular.x, cfg);
      m.ground = product_state(r.psi, m.workflow);
      if (rep) {
        rep->nde_objective = r.objective;
        rep->nde_threshold = r.threshold;
        rep->nde_accepted = r.accepted;
        if (opt.method != Method::eig)
          rep->notes.push_back("nde ground state comes from the product search for every method");
      }
      return;
    }

    const bool pf = m.workflow == Workflow::permutation_free;
    const VectorXd reference = pf ? project_middle_zero(permutation_free_ground(sp, m.n), m.n) : sp.ground_vector;
    const int q = qubits_of(static_cast<Eigen::Index>(H.dim()));
    std::optional<double> bound;
    try {
      // The bound degenerates at one qubit; use its two-qubit form there.
      bound = evolution_time_bound(sp, std::max(q, 2), pf);
      if (q < 2 && rep) rep->notes.push_back("single-qubit problem: time bound evaluated with n - 1 = 1");
      if (!pf && sp.lambda_2() <= sp.zero_tol && rep)
        rep->notes.push_back("lambda_2 lies below the zero tolerance; the gap is resolved only relative to lambda_min");
    } catch (const std::exception& e) {
      if (rep) rep->notes.push_back(std::string("time bound unavailable: ") + e.what());
    }
    if (rep) rep->time_bound = bound;

    VectorXd g;
    switch (opt.method) {
      case Method::eig:
        g = reference;
        break;
      case Method::qite: {
        double t = opt.t;
        if (t <= 0.0) {
          if (!bound) throw std::runtime_error("qite needs --t when the time bound is unavailable");
          t = 4.0 * *bound;
        }
        const auto r = qite_evolve(sp, t, uniform_state(H.dim()));
        if (r.weak_overlap && rep) rep->notes.push_back("initial state overlaps the ground space below 1e-6");
        g = r.state;
        if (rep) rep->evolution_time = t;
        break;
      }
      case Method::qsvt: {
        const double t = opt.t > 0.0 ? opt.t : 8.0;
        FitConfig fc;
        fc.seed = opt.seed;
        const auto fit = qsp_fit_angles(t, opt.degree_even, opt.degree_odd, fc);
        const BlockEncoding enc = block_encode_dense(H.matrix);
        VectorXd v = uniform_state(H.dim());
        int rounds = 0;
        for (; rounds < opt.max_rounds; ++rounds) {
          VectorXd w = qsvt_apply_to(fit.seq, enc, v);
          const double nr = w.norm();
          if (nr == 0.0) throw std::runtime_error("qsvt image vanished");
          w /= nr;
          fix_sign(w);
          const double step = (w - v).norm();
          v = w;
          if (step < 1e-12) {
            ++rounds;
            break;
          }
        }
        g = v;
        if (rep) {
          rep->evolution_time = t;
          rep->fit_error = fit.seq.fit_error;
          rep->rounds = rounds;
        }
        break;
      }
    }
    if (pf) g = project_middle_zero(g, m.n);
    m.ground = g;
    if (rep && opt.method != Method::eig) rep->fidelity = fidelity(g, reference);
  });

  staged("scale", rep, [&] {
    const auto& r = resolved.regular;
    recover_scale(m, r.x, r.value, r.order(), r.y);
  });
  return out;
}

double de_residual(const ProblemSpec& resolved, const SolutionModel& model, int grid) {
  Differentiator d(model);
  const bool two = model.two_d();
  const int gy = two ? grid : 1;
  double sup = 0.0;
  for (int i = 0; i < grid; ++i) {
    const double x = grid > 1 ? -1.0 + 2.0 * i / (grid - 1) : 0.0;
    for (int j = 0; j < gy; ++j) {
      const double y = two && grid > 1 ? -1.0 + 2.0 * j / (grid - 1) : 0.0;
      double r = 0.0;
      for (const auto& t : resolved.terms) {
        const double c = poly_at(t.coeff, x);
        if (t.degree == 1) {
          r += c * d(x, y, t.dx, t.dy);
        } else {
          r += c * d(x, y, t.factors[0], 0) * d(x, y, t.factors[1], 0);
        }
      }
      if (resolved.source) r -= poly_at(resolved.source->coeffs, x);
      sup = std::max(sup, std::abs(r));
    }
  }
  return sup;
}

RunReport run(const ProblemSpec& input, const RunOptions& opt) {
  RunReport rep;
  ProblemSpec spec = input;
  if (opt.n_override > 0) spec.n = opt.n_override;
  if (opt.grid < 2) throw StageError("options", "grid needs at least 2 points");
  rep.id = spec.id;
  rep.kind = to_string(spec.kind);
  rep.workflow = to_string(spec.workflow);
  rep.method = to_string(opt.method);
  rep.n = spec.n;
  rep.reference = spec.reference;
  rep.two_d = spec.kind == Kind::pde_2d;
  rep.shots = opt.shots;

  PreparedState ps = prepare(spec, opt, &rep);
  const SolutionModel& m = ps.model;
  rep.eta = m.eta;
  rep.s = m.s;
  rep.c0 = m.c0;
  rep.anchor_x = m.anchor_x;
  rep.anchor_y = m.anchor_y;
  rep.anchor_value = m.anchor_value;

  const AnalyticSolution* ref = nullptr;
  if (!spec.reference.empty()) {
    staged("compare", nullptr, [&] { ref = &find_reference(spec.reference); });
  }

  staged("evaluate", &rep, [&] {
    const bool sampled = opt.shots > 0;
    rep.evaluation = sampled ? "interferometric" : (opt.interferometric ? "interferometric-exact" : "direct");
    const int gy = rep.two_d ? opt.grid : 1;
    rep.table.reserve(static_cast<std::size_t>(opt.grid) * static_cast<std::size_t>(gy));
    std::size_t idx = 0;
    for (int i = 0; i < opt.grid; ++i) {
      const double x = -1.0 + 2.0 * i / (opt.grid - 1);
      for (int j = 0; j < gy; ++j, ++idx) {
        const double y = rep.two_d ? -1.0 + 2.0 * j / (opt.grid - 1) : 0.0;
        GridPoint p;
        p.x = x;
        p.y = y;
        if (sampled || opt.interferometric) {
          std::seed_seq seq{static_cast<std::uint32_t>(opt.seed), static_cast<std::uint32_t>(opt.seed >> 32),
                            static_cast<std::uint32_t>(idx)};
          std::mt19937_64 rng(seq);
          const auto est = interferometric(m, x, y, sampled ? opt.shots : 0, &rng);
          p.value = est.value + m.c0;
          p.std_error = est.std_error;
        } else {
          p.value = model_value(m, x, y);
        }
        if (ref) p.exact = ref->f(x, y);
        rep.table.push_back(p);
      }
    }
  });

  staged("compare", &rep, [&] {
    const ProblemSpec resolved = resolve_shift(spec);
    rep.residual_sup = de_residual(resolved, m, rep.two_d ? std::min(opt.grid, 101) : opt.grid);
    Differentiator d(m);
    for (const auto& c : resolved.invariants) {
      const int k = c.order();
      double v = 0.0;
      if (m.two_d()) {
        v = c.axis == 1 ? d(c.x, 0.0, k, 0) : d(0.0, c.y, 0, k);
        // A Dirichlet line constraint holds along the whole line; report its sup.
        double sup = 0.0;
        for (int i = 0; i < 101; ++i) {
          const double u = -1.0 + 2.0 * i / 100;
          sup = std::max(sup, std::abs(c.axis == 1 ? d(c.x, u, k, 0) : d(u, c.y, 0, k)));
        }
        v = sup;
      } else {
        v = std::abs(d(c.x, 0.0, k, 0));
      }
      std::ostringstream label;
      label << (k ? "d" : "") << "f(" << (m.two_d() && c.axis == 2 ? "y=" + fmt(c.y) : fmt(c.x)) << ")";
      rep.constraint_residuals.emplace_back(label.str(), v);
    }
    if (ref) {
      double sup = 0.0, ss = 0.0, fmax = 0.0;
      for (const auto& p : rep.table) {
        const double e = std::abs(p.value - *p.exact);
        sup = std::max(sup, e);
        ss += e * e;
        fmax = std::max(fmax, std::abs(*p.exact));
      }
      rep.error_sup = sup;
      rep.error_rms = std::sqrt(ss / static_cast<double>(rep.table.size()));
      rep.max_abs_exact = fmax;
    }
  });
  return rep;
}

void write_csv(std::ostream& out, const RunReport& r) {
  const bool se = r.shots > 0;
  out << (r.two_d ? "x,y," : "x,") << "f_Q,f_exact,abs_error" << (se ? ",std_error" : "") << "\n";
  for (const auto& p : r.table) {
    out << fmt(p.x) << ",";
    if (r.two_d) out << fmt(p.y) << ",";
    out << fmt(p.value) << ",";
    if (p.exact) {
      out << fmt(*p.exact) << "," << fmt(std::abs(p.value - *p.exact));
    } else {
      out << ",";
    }
    if (se) out << "," << fmt(p.std_error);
    out << "\n";
  }
}

void write_report(std::ostream& out, const RunReport& r) {
  auto opt = [&](const char* key, const std::optional<double>& v) {
    if (v) out << key << " = " << fmt(*v) << "\n";
  };
  out << "id = " << r.id << "\n";
  out << "kind = " << r.kind << "\n";
  out << "workflow = " << r.workflow << "\n";
  out << "method = " << r.method << "\n";
  out << "n = " << r.n << "\n";
  out << "dim = " << r.dim << "\n";
  out << "eta = " << fmt(r.eta) << "\n";
  out << "s = " << fmt(r.s) << "\n";
  out << "c0 = " << fmt(r.c0) << "\n";
  out << "anchor = " << fmt(r.anchor_x) << " " << fmt(r.anchor_y) << " " << fmt(r.anchor_value) << "\n";
  out << "lambda_min = " << fmt(r.lambda_min) << "\n";
  out << "lambda_2 = " << fmt(r.lambda_2) << "\n";
  out << "lambda_max = " << fmt(r.lambda_max) << "\n";
  out << "gap = " << fmt(r.gap) << "\n";
  out << "zero_tol = " << fmt(r.zero_tol) << "\n";
  out << "zero_space_dim = " << r.zero_space_dim << "\n";
  opt("time_bound", r.time_bound);
  opt("evolution_time", r.evolution_time);
  opt("fidelity", r.fidelity);
  opt("fit_error", r.fit_error);
  if (r.rounds) out << "rounds = " << *r.rounds << "\n";
  opt("nde_objective", r.nde_objective);
  opt("nde_threshold", r.nde_threshold);
  if (r.nde_accepted) out << "nde_accepted = " << *r.nde_accepted << "\n";
  out << "evaluation = " << r.evaluation << "\n";
  out << "shots = " << r.shots << "\n";
  out << "grid_points = " << r.table.size() << "\n";
  out << "residual_sup = " << fmt(r.residual_sup) << "\n";
  for (const auto& [k, v] : r.constraint_residuals) out << "constraint " << k << " = " << fmt(v) << "\n";
  if (!r.reference.empty()) out << "reference = " << r.reference << "\n";
  opt("error_sup", r.error_sup);
  opt("error_rms", r.error_rms);
  opt("max_abs_exact", r.max_abs_exact);
  if (r.error_sup && r.max_abs_exact && *r.max_abs_exact > 0.0)
    out << "error_sup_relative = " << fmt(*r.error_sup / *r.max_abs_exact) << "\n";
  for (const auto& [k, v] : r.timings) out << "time." << k << " = " << fmt(v) << "\n";
  for (const auto& note : r.notes) out << "note = " << note << "\n";
}

}  // namespace chebham
