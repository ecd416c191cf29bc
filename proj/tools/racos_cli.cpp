// Copyright 2026 The racos Authors.
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


// Command-line front end: detection on CSV matrices, synthetic data,
// parameter calculators, sweeps, phase grids and timing benchmarks.

#include "racos/bounds.hpp"
#include "racos/error.hpp"
#include "racos/experiments.hpp"
#include "racos/matrix_io.hpp"
#include "racos/racos.hpp"
#include "racos/solvers.hpp"
#include "racos/synth.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>

namespace fs = std::filesystem;
using namespace racos;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitCompute = 2;

struct SolverFlags {
  int max_iters = SolverOptions{}.max_iters;
  double tolerance = SolverOptions{}.primal_tolerance;

  void add(CLI::App* app) {
    app->add_option("--max-iters", max_iters, "ADMM iteration cap")->capture_default_str();
    app->add_option("--tol", tolerance, "Relative primal and dual tolerance")->capture_default_str();
  }
  SolverOptions options() const {
    SolverOptions o;
    o.max_iters = max_iters;
    o.primal_tolerance = tolerance;
    o.dual_tolerance = tolerance;
    return o;
  }
};

void emit(const nlohmann::json& doc, const std::string& out) {
  if (out.empty() || out == "-") {
    std::cout << doc.dump(2) << '\n';
  } else {
    write_json(out, doc);
  }
}

struct NoisyCmd {
  std::string input;
  std::string out;
  double gamma = RacosNParams{}.gamma;
  Index m = RacosNParams{}.m;
  Index q = RacosNParams{}.q;
  double lambda = 0.4;
  double alpha_energy = 0.99;
  std::optional<double> alpha;
  double eps1 = 0.0;
  std::string eps2 = "auto";
  std::uint64_t seed = 0;
  bool full = false;
  SolverFlags solver;

  void add(CLI::App& root) {
    auto* c = root.add_subcommand("detect-noisy", "RACOS-N on a fully observed CSV matrix");
    c->add_option("--input", input, "Matrix CSV")->required();
    c->add_option("--out", out, "Report JSON (stdout when omitted)");
    c->add_option("--gamma", gamma, "Column sampling rate")->capture_default_str();
    c->add_option("--m", m, "Rows of the Gaussian sketch")->capture_default_str();
    c->add_option("--q", q, "Rows of the second sketch; 0 uses the identity")->capture_default_str();
    c->add_option("--lambda", lambda, "Column-sparsity weight")->capture_default_str();
    c->add_option("--alpha-energy", alpha_energy, "Keep this fraction of singular-value mass")
        ->capture_default_str();
    c->add_option("--alpha", alpha, "Fixed singular-value threshold (overrides --alpha-energy)");
    c->add_option("--eps1", eps1, "Noise radius of the first-stage fit")->capture_default_str();
    c->add_option("--eps2", eps2, "Detection threshold: 'auto' (largest gap) or a number")
        ->capture_default_str();
    c->add_option("--seed", seed, "Random seed")->capture_default_str();
    c->add_flag("--full", full, "Skip sketching and decompose the whole matrix");
    solver.add(c);
    c->callback([this] { run(); });
  }

  void run() const {
    const Matrix mat = read_matrix_csv(input);
    RacosNParams p;
    p.gamma = gamma;
    p.m = m;
    p.q = q;
    p.lambda = FixedLambda{lambda};
    if (alpha) {
      p.alpha = FixedAlpha{*alpha};
    } else {
      p.alpha = EnergyFraction{alpha_energy};
    }
    p.epsilon1 = eps1;
    if (eps2 != "auto") {
      try {
        p.epsilon2 = FixedEpsilon2{std::stod(eps2)};
      } catch (const std::exception&) {
        throw CLI::ValidationError("--eps2", "expected 'auto' or a number, got '" + eps2 + "'");
      }
    }
    p.seed = RngSeed{seed, 0};
    p.solver = solver.options();
    const OutlierReport rep = full ? outlier_pursuit_detect(mat, p) : racos_n(mat, p);
    emit(to_json(rep), out);
  }
};

struct MissingCmd {
  std::string input;
  std::string out;
  double gamma1 = RacosIParams{}.gamma1;
  double gamma2 = RacosIParams{}.gamma2;
  double lambda = 0.4;
  std::optional<double> trim_rho;
  std::optional<double> residual_floor;
  double floor_factor = RacosIParams{}.residual_floor_factor;
  std::uint64_t seed = 0;
  SolverFlags solver;

  void add(CLI::App& root) {
    auto* c = root.add_subcommand("detect-missing", "RACOS-I on a CSV matrix with NaN for missing cells");
    c->add_option("--input", input, "Matrix CSV")->required();
    c->add_option("--out", out, "Report JSON (stdout when omitted)");
    c->add_option("--gamma1", gamma1, "Row sampling rate")->capture_default_str();
    c->add_option("--gamma2", gamma2, "Column sampling rate")->capture_default_str();
    c->add_option("--lambda", lambda, "Column-sparsity weight")->capture_default_str();
    c->add_option("--trim-rho", trim_rho, "Trimming level; off when omitted");
    c->add_option("--residual-floor", residual_floor, "Absolute detection floor");
    c->add_option("--floor-factor", floor_factor, "Relative detection floor")->capture_default_str();
    c->add_option("--seed", seed, "Random seed")->capture_default_str();
    solver.add(c);
    c->callback([this] { run(); });
  }

  void run() const {
    const MaskedMatrix mat = read_masked_csv(input);
    RacosIParams p;
    p.gamma1 = gamma1;
    p.gamma2 = gamma2;
    p.lambda = FixedLambda{lambda};
    p.trim_rho = trim_rho;
    p.residual_floor = residual_floor;
    p.residual_floor_factor = floor_factor;
    p.seed = RngSeed{seed, 0};
    p.solver = solver.options();
    emit(to_json(racos_i(mat, p)), out);
  }
};

struct SynthCmd {
  ProblemSpec spec;
  std::string noise = "none";
  double noise_level = 0.0;
  std::uint64_t seed = 0;
  std::string out_dir = ".";

  void add(CLI::App& root) {
    auto* c = root.add_subcommand("synth", "Generate a synthetic low-rank plus outlier matrix");
    c->add_option("--n1", spec.n1, "Rows")->capture_default_str();
    c->add_option("--n2", spec.n2, "Columns")->capture_default_str();
    c->add_option("--r", spec.r, "Rank of the inlier part")->capture_default_str();
    c->add_option("--k", spec.k, "Number of outlier columns")->capture_default_str();
    c->add_option("--sigma-r", spec.sigma_r, "Target r-th singular value of L");
    c->add_option("--noise", noise, "none, gaussian or laplace")
        ->check(CLI::IsMember({"none", "gaussian", "laplace"}))
        ->capture_default_str();
    c->add_option("--noise-level", noise_level, "Gaussian sigma or Laplace scale")->capture_default_str();
    c->add_option("--p", spec.p, "Observation rate; also writes M_missing.csv");
    c->add_flag("--shuffle", spec.shuffle, "Shuffle outlier positions");
    c->add_option("--seed", seed, "Random seed")->capture_default_str();
    c->add_option("--out-dir", out_dir, "Output directory")->capture_default_str();
    c->callback([this] { run(); });
  }

  void run() {
    if (spec.p && noise != "none")
      throw CLI::ValidationError("--noise", "the incomplete model (--p) is noise free");
    if (noise == "gaussian") spec.noise = GaussianNoise{noise_level};
    if (noise == "laplace") spec.noise = LaplaceNoise{noise_level};
    const SyntheticProblem prob = generate(spec, RngSeed{seed, 0});
    const fs::path dir(out_dir);
    fs::create_directories(dir);
    write_matrix_csv(dir / "M.csv", prob.observed());
    if (prob.mask) write_masked_csv(dir / "M_missing.csv", prob.masked());
    nlohmann::json truth;
    truth["n2"] = spec.n2;
    truth["outliers"] = prob.truth.indices();
    write_json(dir / "truth.json", truth);
    write_json(dir / "meta.json", to_json(prob.meta));
  }
};

struct BoundsCmd {
  TheoryInputs in;
  std::optional<double> n_l;
  std::optional<double> mu_l;
  std::string out;

  void add(CLI::App& root) {
    auto* c = root.add_subcommand("bounds", "Evaluate the sample-complexity and tuning formulas");
    c->add_option("--n1", in.n1, "Rows")->required();
    c->add_option("--n2", in.n2, "Columns")->required();
    c->add_option("--n-l", n_l, "Inlier columns (defaults to n2)");
    c->add_option("--r", in.r, "Rank")->required();
    c->add_option("--mu-u", in.mu_u, "Row incoherence")->capture_default_str();
    c->add_option("--mu-v", in.mu_v, "Column incoherence")->capture_default_str();
    c->add_option("--mu-l", mu_l, "Joint incoherence (defaults to max of mu-u, mu-v)");
    c->add_option("--kappa", in.kappa, "Condition number of L")->capture_default_str();
    c->add_option("--delta", in.delta, "Failure probability")->capture_default_str();
    c->add_option("--p", in.p, "Observation rate")->capture_default_str();
    c->add_option("--gamma", in.gamma, "Column sampling rate")->capture_default_str();
    c->add_option("--gamma1", in.gamma1, "Row sampling rate")->capture_default_str();
    c->add_option("--gamma2", in.gamma2, "Column sampling rate (incomplete model)")->capture_default_str();
    c->add_option("--tau1", in.tau1, "Leverage margin")->capture_default_str();
    c->add_option("--eta-n", in.eta_n, "Largest noise column norm")->capture_default_str();
    c->add_option("--sigma", in.sigma, "Gaussian noise level")->capture_default_str();
    c->add_option("--phi", in.phi, "Trimming ratio rho/p")->capture_default_str();
    c->add_option("--beta", in.beta, "Outlier-to-inlier norm ratio")->capture_default_str();
    c->add_option("--c-p", in.c_p, "Constant in the p bound")->capture_default_str();
    c->add_option("--c-k", in.c_k, "Constant in the k bound")->capture_default_str();
    c->add_option("--c-gamma2", in.c_gamma2, "Constant in the gamma2 bound")->capture_default_str();
    c->add_option("--out", out, "JSON output (stdout when omitted)");
    c->callback([this] { run(); });
  }

  void run() {
    in.n_l = n_l.value_or(in.n2);
    in.mu_l = mu_l;
    emit(bounds_table(in), out);
  }
};

struct SweepCmd {
  std::string config;
  std::string out = "sweep.csv";
  std::string json_out;

  void add(CLI::App& root) {
    auto* c = root.add_subcommand("sweep", "Monte Carlo success-rate sweep over one parameter");
    c->add_option("--config", config, "Sweep config JSON")->required()->check(CLI::ExistingFile);
    c->add_option("--out", out, "CSV output")->capture_default_str();
    c->add_option("--json", json_out, "Optional JSON output");
    c->callback([this] { run(); });
  }

  void run() const {
    const SweepConfig cfg = sweep_config_from_json(read_json(config));
    const SweepResult res = run_sweep(cfg);
    write_csv(res, out);
    if (!json_out.empty()) write_json(res, json_out);
    std::cerr << "sweep: " << res.records.size() << " points written to " << out << '\n';
  }
};

struct PhaseCmd {
  std::string config;
  std::string out = "phase.csv";
  std::string json_out;

  void add(CLI::App& root) {
    auto* c = root.add_subcommand("phase", "Success and runtime over a two-parameter grid");
    c->add_option("--config", config, "Phase config JSON")->required()->check(CLI::ExistingFile);
    c->add_option("--out", out, "CSV output")->capture_default_str();
    c->add_option("--json", json_out, "Optional JSON output");
    c->callback([this] { run(); });
  }

  void run() const {
    const PhaseConfig cfg = phase_config_from_json(read_json(config));
    const PhaseResult res = run_phase(cfg);
    write_csv(res, out);
    if (!json_out.empty()) write_json(res, json_out);
    std::cerr << "phase: " << res.cells.size() << " cells written to " << out << '\n';
  }
};

struct BenchCmd {
  Index n1 = 200;
  Index n2 = 500;
  Index r = 5;
  Index k = 100;
  double m_ratio = 0.2;
  double gamma = 0.2;
  double gamma1 = 0.3;
  double gamma2 = 0.3;
  double p = 0.4;
  bool missing = false;
  Index trials = 10;
  std::uint64_t seed = 0;
  std::string out;

  void add(CLI::App& root) {
    auto* c = root.add_subcommand("bench", "Time a sketched run against the full model");
    c->add_option("--n1", n1, "Rows")->capture_default_str();
    c->add_option("--n2", n2, "Columns")->capture_default_str();
    c->add_option("--r", r, "Rank")->capture_default_str();
    c->add_option("--k", k, "Outlier columns")->capture_default_str();
    c->add_option("--m-ratio", m_ratio, "m / n1 for RACOS-N")->capture_default_str();
    c->add_option("--gamma", gamma, "Column rate for RACOS-N")->capture_default_str();
    c->add_option("--gamma1", gamma1, "Row rate for RACOS-I")->capture_default_str();
    c->add_option("--gamma2", gamma2, "Column rate for RACOS-I")->capture_default_str();
    c->add_option("--p", p, "Observation rate for RACOS-I")->capture_default_str();
    c->add_flag("--missing", missing, "Benchmark RACOS-I instead of RACOS-N");
    c->add_option("--trials", trials, "Trials per configuration")->capture_default_str();
    c->add_option("--seed", seed, "Random seed")->capture_default_str();
    c->add_option("--out", out, "JSON output (stdout when omitted)");
    c->callback([this] { run(); });
  }

  void run() const {
    PhaseConfig cfg;
    cfg.base.algorithm = missing ? Algorithm::RacosI : Algorithm::RacosN;
    cfg.base.problem.n1 = n1;
    cfg.base.problem.n2 = n2;
    cfg.base.problem.r = r;
    cfg.base.problem.k = k;
    if (missing) cfg.base.problem.p = p;
    cfg.base.trials = trials;
    cfg.base.base_seed = seed;
    if (missing) {
      cfg.param1 = "gamma1";
      cfg.values1 = {gamma1};
      cfg.param2 = "gamma2";
      cfg.values2 = {gamma2};
    } else {
      cfg.param1 = "m_ratio";
      cfg.values1 = {m_ratio};
      cfg.param2 = "gamma";
      cfg.values2 = {gamma};
    }
    const PhaseResult res = run_phase(cfg);
    nlohmann::json doc = to_json(res);
    doc["algorithm"] = missing ? "racos_i" : "racos_n";
    emit(doc, out);
  }
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Randomized outlier-column detection"};
  app.require_subcommand(0, 1);
  NoisyCmd noisy;
  MissingCmd missing;
  SynthCmd synth;
  BoundsCmd bounds;
  SweepCmd sweep;
  PhaseCmd phase;
  BenchCmd bench;
  noisy.add(app);
  missing.add(app);
  synth.add(app);
  bounds.add(app);
  sweep.add(app);
  phase.add(app);
  bench.add(app);

  if (argc <= 1) {
    std::cout << app.help();
    return kExitUsage;
  }
  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  } catch (const racos::Error& e) {
    std::cerr << "error (" << to_string(e.kind()) << "): " << e.what() << '\n';
    return kExitCompute;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitCompute;
  }
  if (app.get_subcommands().empty()) {
    std::cout << app.help();
    return kExitUsage;
  }
  return kExitOk;
}
