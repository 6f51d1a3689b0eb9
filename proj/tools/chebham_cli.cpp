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

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>

#include "chebham/qsvt.hpp"
#include "chebham/solver.hpp"
#include "chebham/spec_io.hpp"
#include "chebham/verify.hpp"

namespace {

const std::map<std::string, int> kStageExit = {
    {"options", 2},  {"parse", 3},   {"validate", 4}, {"assemble", 5}, {"groundstate", 6},
    {"scale", 7},    {"evaluate", 8}, {"compare", 9},  {"output", 10},  {"fit", 11},
    {"verify", 12},
};

int fail(const std::string& stage, const std::string& what) {
  std::cerr << "chebham: [" << stage << "] " << what << "\n";
  auto it = kStageExit.find(stage);
  return it == kStageExit.end() ? 1 : it->second;
}

struct SolveArgs {
  std::string spec;
  std::string method = "eig";
  int n = 0;
  long shots = 0;
  std::uint64_t seed = 0;
  int grid = 201;
  std::string out = ".";
  bool interferometric = false;
  double t = 0.0;
  int de = 6, dodd = 7;
  int max_rounds = 2000;
};

int do_solve(const SolveArgs& a) {
  chebham::RunOptions opt;
  try {
    opt.method = chebham::method_from_string(a.method);
  } catch (const std::exception& e) {
    return fail("options", e.what());
  }
  opt.n_override = a.n;
  opt.shots = a.shots;
  opt.seed = a.seed;
  opt.grid = a.grid;
  opt.interferometric = a.interferometric;
  opt.t = a.t;
  opt.degree_even = a.de;
  opt.degree_odd = a.dodd;
  opt.max_rounds = a.max_rounds;

  chebham::ProblemSpec spec;
  try {
    spec = chebham::parse_spec_file(a.spec);
  } catch (const std::exception& e) {
    return fail("parse", a.spec + ": " + e.what());
  }

  chebham::RunReport rep;
  try {
    rep = chebham::run(spec, opt);
  } catch (const chebham::StageError& e) {
    return fail(e.stage(), e.what());
  } catch (const std::exception& e) {
    return fail("run", e.what());
  }

  namespace fs = std::filesystem;
  try {
    fs::create_directories(a.out);
    const fs::path base = fs::path(a.out) / (rep.id.empty() ? "solution" : rep.id);
    std::ofstream csv(base.string() + ".csv"), report(base.string() + ".report");
    if (!csv || !report) throw std::runtime_error("cannot write into '" + a.out + "'");
    chebham::write_csv(csv, rep);
    chebham::write_report(report, rep);
    std::cout << rep.id << ": n=" << rep.n << " method=" << rep.method << " eta=" << chebham::format_number(rep.eta);
    if (rep.error_sup) std::cout << " error_sup=" << chebham::format_number(*rep.error_sup);
    std::cout << "\n  " << base.string() << ".csv\n  " << base.string() << ".report\n";
  } catch (const std::exception& e) {
    return fail("output", e.what());
  }
  return 0;
}

int do_verify(int n, int sweeps, std::uint64_t seed) {
  std::vector<chebham::IdentityCheck> checks;
  try {
    checks = chebham::identity_suite(n, sweeps, seed);
  } catch (const std::exception& e) {
    return fail("verify", e.what());
  }
  int bad = 0;
  for (const auto& c : checks) {
    std::cout << (c.pass() ? "PASS " : "FAIL ") << "n=" << c.n << " " << c.name << " residual=" << c.residual
              << "\n";
    bad += !c.pass();
  }
  if (bad) return fail("verify", std::to_string(bad) + " identity check(s) above tolerance");
  return 0;
}

int do_fit(double t, int de, int dodd, double tol, int restarts, std::uint64_t seed, const std::string& out) {
  chebham::FitConfig cfg;
  cfg.tol = tol;
  cfg.restarts = restarts;
  cfg.seed = seed;
  chebham::FitResult r;
  try {
    r = chebham::qsp_fit_angles(t, de, dodd, cfg);
  } catch (const std::exception& e) {
    return fail("fit", e.what());
  }
  try {
    if (out.empty()) {
      chebham::write_phase_sequence(std::cout, r.seq);
    } else {
      std::ofstream f(out);
      if (!f) throw std::runtime_error("cannot write '" + out + "'");
      chebham::write_phase_sequence(f, r.seq);
    }
  } catch (const std::exception& e) {
    return fail("output", e.what());
  }
  if (!r.converged)
    return fail("fit", "best fit_error " + chebham::format_number(r.seq.fit_error) + " exceeds tolerance " +
                           chebham::format_number(tol));
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"chebham: differential equations as ground-state problems in a Chebyshev latent space"};
  app.require_subcommand(1);

  SolveArgs sa;
  auto* solve = app.add_subcommand("solve", "solve a problem spec and write <id>.csv and <id>.report");
  solve->add_option("spec", sa.spec, "problem spec file")->required()->check(CLI::ExistingFile);
  solve->add_option("--method", sa.method, "eig | qite | qsvt")->check(CLI::IsMember({"eig", "qite", "qsvt"}));
  solve->add_option("--n", sa.n, "override the qubit count per register")->check(CLI::Range(1, 8));
  solve->add_option("--shots", sa.shots, "shots per probability (0: exact)")->check(CLI::NonNegativeNumber);
  solve->add_option("--seed", sa.seed, "seed for sampling and restarts");
  solve->add_option("--grid", sa.grid, "grid points per axis")->check(CLI::Range(2, 100001));
  solve->add_option("--out", sa.out, "output directory");
  solve->add_flag("--interferometric", sa.interferometric, "zero-shot interferometric evaluation");
  solve->add_option("--t", sa.t, "evolution time (qite default 4x bound, qsvt default 8)");
  solve->add_option("--de", sa.de, "qsvt even degree");
  solve->add_option("--do", sa.dodd, "qsvt odd degree");
  solve->add_option("--max-rounds", sa.max_rounds, "qsvt application rounds")->check(CLI::PositiveNumber);

  int vn = 2, sweeps = 100;
  std::uint64_t vseed = 7;
  auto* verify = app.add_subcommand("verify-operators", "run the operator identity suite");
  verify->add_option("--n", vn, "qubits")->required()->check(CLI::Range(1, 8));
  verify->add_option("--sweeps", sweeps, "random draws per identity")->check(CLI::PositiveNumber);
  verify->add_option("--seed", vseed, "sweep seed");

  double ft = 8.0, ftol = 1e-3;
  int fde = 6, fdo = 7, frestarts = 24;
  std::uint64_t fseed = 0;
  std::string fout;
  auto* fit = app.add_subcommand("fit-angles", "fit QSP phases to exp(-t x) on [0, 1]");
  fit->add_option("--t", ft, "evolution time")->required()->check(CLI::PositiveNumber);
  fit->add_option("--de", fde, "even degree")->required()->check(CLI::NonNegativeNumber);
  fit->add_option("--do", fdo, "odd degree")->required()->check(CLI::PositiveNumber);
  fit->add_option("--tol", ftol, "acceptance tolerance on fit_error");
  fit->add_option("--restarts", frestarts, "random restarts")->check(CLI::NonNegativeNumber);
  fit->add_option("--seed", fseed, "restart seed");
  fit->add_option("--out", fout, "write the phase sequence here instead of stdout");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : kStageExit.at("options");
  }

  if (*solve) return do_solve(sa);
  if (*verify) return do_verify(vn, sweeps, vseed);
  return do_fit(ft, fde, fdo, ftol, frestarts, fseed, fout);
}
