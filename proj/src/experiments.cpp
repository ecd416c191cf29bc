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


#include "racos/experiments.hpp"

#include "racos/error.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <sstream>
#include <thread>

namespace racos {
namespace {

using Overrides = std::vector<std::pair<std::string, double>>;

Index as_count(const std::string& name, double v) {
  require(std::isfinite(v) && v >= 0.0 && std::abs(v - std::round(v)) < 1e-9,
          "parameter " + name + " must be a nonnegative integer");
  return static_cast<Index>(std::llround(v));
}

void apply_override(ExperimentTemplate& t, const std::string& name, double v) {
  if (name == "sigma_r") {
    t.problem.sigma_r = v;
  } else if (name == "sigma_n") {
    if (auto* lap = std::get_if<LaplaceNoise>(&t.problem.noise)) {
      lap->scale = v;
    } else {
      t.problem.noise = GaussianNoise{v};
    }
  } else if (name == "gamma") {
    t.racos_n.gamma = v;
  } else if (name == "m") {
    t.racos_n.m = as_count(name, v);
  } else if (name == "m_ratio") {
    t.racos_n.m = std::max<Index>(1, std::llround(v * static_cast<double>(t.problem.n1)));
  } else if (name == "q") {
    t.racos_n.q = as_count(name, v);
  } else if (name == "lambda") {
    t.racos_n.lambda = FixedLambda{v};
    t.racos_i.lambda = FixedLambda{v};
  } else if (name == "gamma1") {
    t.racos_i.gamma1 = v;
  } else if (name == "gamma2") {
    t.racos_i.gamma2 = v;
  } else if (name == "p") {
    t.problem.p = v;
  } else if (name == "k") {
    t.problem.k = as_count(name, v);
  } else if (name == "r") {
    t.problem.r = as_count(name, v);
  } else if (name == "trim_rho") {
    t.racos_i.trim_rho = v;
  } else if (name == "epsilon1") {
    t.racos_n.epsilon1 = v;
  } else {
    fail(ErrorKind::InvalidInput, "unknown experiment parameter '" + name + "'");
  }
}

double noise_sd(const NoiseKind& kind) {
  if (const auto* g = std::get_if<GaussianNoise>(&kind)) return g->sigma;
  if (const auto* l = std::get_if<LaplaceNoise>(&kind)) return std::sqrt(2.0) * l->scale;
  return 0.0;
}

bool is_full_size(const ExperimentTemplate& t) {
  if (t.algorithm == Algorithm::RacosN) return t.racos_n.m == t.problem.n1 && t.racos_n.gamma == 1.0;
  return t.racos_i.gamma1 == 1.0 && t.racos_i.gamma2 == 1.0;
}

const std::vector<std::string>& known_params() {
  static const std::vector<std::string> names = {
      "sigma_r", "sigma_n", "gamma", "m", "m_ratio", "q", "lambda",
      "gamma1", "gamma2", "p", "k", "r", "trim_rho", "epsilon1"};
  return names;
}

bool known_param(const std::string& name) {
  const auto& n = known_params();
  return std::find(n.begin(), n.end(), name) != n.end();
}

// Runs task(i) for i in [0, n) on a fixed-size pool. Output slots are
// indexed, so results never depend on completion order.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& task) {
  const unsigned workers = worker_count(n);
  if (workers <= 1) {
    for (std::size_t i = 0; i < n; ++i) task(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (unsigned w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (std::size_t i = next.fetch_add(1); i < n; i = next.fetch_add(1)) task(i);
    });
  }
  for (auto& th : pool) th.join();
}

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string fmt_ms(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6f", v);
  return buf;
}

std::ofstream open_out(const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) fail(ErrorKind::Io, "cannot write " + path.string());
  return out;
}

std::vector<std::vector<std::string>> read_rows(const std::filesystem::path& path,
                                                const std::string& header) {
  std::ifstream in(path);
  if (!in) fail(ErrorKind::Io, "cannot open " + path.string());
  std::string line;
  if (!std::getline(in, line)) fail(ErrorKind::Io, path.string() + ": missing header");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line != header) fail(ErrorKind::Io, path.string() + ": unexpected header '" + line + "'");
  std::vector<std::vector<std::string>> rows;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    std::vector<std::string> cells;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) cells.push_back(cell);
    rows.push_back(std::move(cells));
  }
  return rows;
}

double parse_num(const std::string& s, const std::filesystem::path& path, std::size_t row) {
  char* end = nullptr;
  const double v = std::strtod(s.c_str(), &end);
  if (s.empty() || end != s.c_str() + s.size())
    fail(ErrorKind::Io, path.string() + ": row " + std::to_string(row + 2) + ": bad number '" + s + "'");
  return v;
}

Algorithm parse_algorithm(const std::string& s) {
  if (s == "racos_n") return Algorithm::RacosN;
  if (s == "racos_i") return Algorithm::RacosI;
  fail(ErrorKind::InvalidInput, "unknown algorithm '" + s + "'");
}

SuccessRule parse_rule(const std::string& s) {
  if (s == "exact_support") return SuccessRule::ExactSupport;
  if (s == "separation") return SuccessRule::Separation;
  fail(ErrorKind::InvalidInput, "unknown success rule '" + s + "'");
}

NoiseKind parse_noise(const nlohmann::json& j) {
  const std::string kind = j.value("kind", std::string("none"));
  const double level = j.value("level", 0.0);
  if (kind == "none") return NoNoise{};
  if (kind == "gaussian") return GaussianNoise{level};
  if (kind == "laplace") return LaplaceNoise{level};
  fail(ErrorKind::InvalidInput, "unknown noise kind '" + kind + "'");
}

ExperimentTemplate template_from_json(const nlohmann::json& doc) {
  ExperimentTemplate t;
  t.algorithm = parse_algorithm(doc.value("algorithm", std::string("racos_n")));
  t.trials = doc.value("trials", t.trials);
  t.base_seed = doc.value("base_seed", t.base_seed);
  t.success_rule = parse_rule(doc.value("success_rule", std::string("exact_support")));

  if (doc.contains("problem")) {
    const auto& p = doc["problem"];
    t.problem.n1 = p.value("n1", t.problem.n1);
    t.problem.n2 = p.value("n2", t.problem.n2);
    t.problem.r = p.value("r", t.problem.r);
    t.problem.k = p.value("k", t.problem.k);
    if (p.contains("sigma_r") && !p["sigma_r"].is_null()) t.problem.sigma_r = p["sigma_r"].get<double>();
    if (p.contains("noise")) t.problem.noise = parse_noise(p["noise"]);
    if (p.contains("p") && !p["p"].is_null()) t.problem.p = p["p"].get<double>();
    t.problem.shuffle = p.value("shuffle", false);
  }
  if (doc.contains("params")) {
    const auto& a = doc["params"];
    t.racos_n.gamma = a.value("gamma", t.racos_n.gamma);
    t.racos_n.m = a.value("m", t.racos_n.m);
    t.racos_n.q = a.value("q", t.racos_n.q);
    if (a.contains("epsilon1") && a["epsilon1"].is_string()) {
      require(a["epsilon1"].get<std::string>() == "auto", "epsilon1 must be a number or \"auto\"");
      t.epsilon1_from_noise = true;
    } else {
      t.racos_n.epsilon1 = a.value("epsilon1", t.racos_n.epsilon1);
    }
    if (a.contains("lambda")) {
      t.racos_n.lambda = FixedLambda{a["lambda"].get<double>()};
      t.racos_i.lambda = FixedLambda{a["lambda"].get<double>()};
    }
    if (a.contains("alpha")) t.racos_n.alpha = FixedAlpha{a["alpha"].get<double>()};
    if (a.contains("alpha_energy")) t.racos_n.alpha = EnergyFraction{a["alpha_energy"].get<double>()};
    if (a.contains("epsilon2")) t.racos_n.epsilon2 = FixedEpsilon2{a["epsilon2"].get<double>()};
    t.racos_i.gamma1 = a.value("gamma1", t.racos_i.gamma1);
    t.racos_i.gamma2 = a.value("gamma2", t.racos_i.gamma2);
    if (a.contains("trim_rho") && !a["trim_rho"].is_null()) t.racos_i.trim_rho = a["trim_rho"].get<double>();
    if (a.contains("residual_floor")) t.racos_i.residual_floor = a["residual_floor"].get<double>();
    t.racos_i.residual_floor_factor = a.value("residual_floor_factor", t.racos_i.residual_floor_factor);
  }
  if (doc.contains("solver")) {
    const auto& s = doc["solver"];
    SolverOptions o;
    o.max_iters = s.value("max_iters", o.max_iters);
    o.primal_tolerance = s.value("primal_tolerance", o.primal_tolerance);
    o.dual_tolerance = s.value("dual_tolerance", o.dual_tolerance);
    o.admm_penalty = s.value("admm_penalty", o.admm_penalty);
    o.adaptive_penalty = s.value("adaptive_penalty", o.adaptive_penalty);
    t.racos_n.solver = o;
    t.racos_i.solver = o;
  }
  require(t.trials >= 1, "experiment: trials must be at least 1");
  return t;
}

}  // namespace

unsigned worker_count(std::size_t tasks) {
  unsigned n = std::max(1u, std::thread::hardware_concurrency());
  if (const char* env = std::getenv("RACOS_THREADS")) {
    char* end = nullptr;
    const long cap = std::strtol(env, &end, 10);
    if (end != env && cap >= 1) n = std::min<unsigned>(n, static_cast<unsigned>(cap));
  }
  return static_cast<unsigned>(std::max<std::size_t>(1, std::min<std::size_t>(n, tasks)));
}

double rescale_value(const std::string& formula, double raw,
                     const std::map<std::string, double>& params) {
  auto get = [&](const char* key) {
    const auto it = params.find(key);
    if (it == params.end())
      fail(ErrorKind::InvalidInput, "rescale " + formula + ": missing symbol " + key);
    return it->second;
  };
  double scale = 1.0;
  if (formula == "none") {
    scale = 1.0;
  } else if (formula == "sigma_r") {
    scale = std::sqrt(get("gamma")) * get("n2") * get("eta_n");
  } else if (formula == "gamma") {
    scale = get("r") * get("mu_v") * std::log(get("r")) / get("n_l");
  } else if (formula == "m_log_k") {
    scale = get("r") + 1.0 + std::log(get("k"));
  } else if (formula == "m_log_n2") {
    scale = get("r") + 1.0 + std::log(get("n2"));
  } else if (formula == "gamma1") {
    scale = get("mu_l") * get("r") * std::log(get("n2")) / (get("n1") * get("p"));
  } else if (formula == "gamma2") {
    scale = get("mu_l") * get("r") * std::log(get("n2")) / (get("n_l") * get("p"));
  } else {
    fail(ErrorKind::InvalidInput, "unknown rescale formula '" + formula + "'");
  }
  require(std::isfinite(scale) && scale > 0.0,
          "rescale " + formula + ": formula value must be positive");
  return raw / scale;
}

RngSeed trial_seed(std::uint64_t base_seed, std::uint64_t value_index, std::uint64_t trial_index) {
  return RngSeed{base_seed, 0}.child("value", value_index).child("trial", trial_index);
}

TrialOutcome run_trial(const ExperimentTemplate& base, const Overrides& overrides,
                       const RngSeed& seed) {
  TrialOutcome out;
  try {
    ExperimentTemplate t = base;
    for (const auto& [name, v] : overrides) apply_override(t, name, v);
    if (t.algorithm == Algorithm::RacosI && !t.problem.p) t.problem.p = 1.0;
    const SyntheticProblem prob = generate(t.problem, seed.child("problem"));
    out.meta = prob.meta;

    using Clock = std::chrono::steady_clock;
    Clock::time_point start;
    if (t.algorithm == Algorithm::RacosN) {
      RacosNParams params = t.racos_n;
      params.seed = seed.child("algorithm");
      if (t.epsilon1_from_noise) {
        const double gamma = is_full_size(t) ? 1.0 : params.gamma;
        const auto cols = static_cast<Index>(std::llround(gamma * static_cast<double>(t.problem.n2)));
        params.epsilon1 = noise_radius(noise_sd(t.problem.noise), t.problem.n1, cols);
      }
      const Matrix m = prob.observed();
      start = Clock::now();
      out.report = is_full_size(t) ? outlier_pursuit_detect(m, params) : racos_n(m, params);
    } else {
      RacosIParams params = t.racos_i;
      params.seed = seed.child("algorithm");
      const MaskedMatrix m = prob.masked();
      start = Clock::now();
      out.report = racos_i(m, params);
    }
    out.runtime_ms = std::chrono::duration<double, std::milli>(Clock::now() - start).count();

    if (t.success_rule == SuccessRule::ExactSupport) {
      out.success = out.report.estimated_outliers == prob.truth;
    } else {
      out.success = separation_success(out.report.residuals, prob.truth);
    }
  } catch (const std::exception& e) {
    out.success = false;
    out.error = e.what();
  }
  return out;
}

void SweepConfig::validate() const {
  require(base.trials >= 1, "sweep: trials must be at least 1");
  require(!values.empty(), "sweep: values must be nonempty");
  require(known_param(param), "sweep: unknown parameter '" + param + "'");
  if (rescale) rescale_value(*rescale, 1.0, {{"gamma", 1}, {"n1", 1}, {"n2", 2}, {"n_l", 1}, {"r", 2},
                                             {"k", 2}, {"p", 1}, {"eta_n", 1}, {"mu_v", 1}, {"mu_l", 1}});
}

SweepResult run_sweep(const SweepConfig& config) {
  config.validate();
  const std::size_t nv = config.values.size();
  const auto trials = static_cast<std::size_t>(config.base.trials);
  std::vector<TrialOutcome> outcomes(nv * trials);
  parallel_for(outcomes.size(), [&](std::size_t i) {
    const std::size_t vi = i / trials;
    const std::size_t ti = i % trials;
    outcomes[i] = run_trial(config.base, {{config.param, config.values[vi]}},
                            trial_seed(config.base.base_seed, vi, ti));
  });

  SweepResult result;
  result.param = config.label.empty() ? config.param : config.label;
  for (std::size_t vi = 0; vi < nv; ++vi) {
    SweepRecord rec;
    rec.value = config.values[vi];
    rec.trials = config.base.trials;
    double runtime = 0.0;
    double eta = 0.0, mu_v = 0.0, mu_l = 0.0;
    Index generated = 0;
    for (std::size_t ti = 0; ti < trials; ++ti) {
      const TrialOutcome& o = outcomes[vi * trials + ti];
      runtime += o.runtime_ms;
      if (o.success) ++rec.successes;
      if (o.error) {
        ++rec.errors;
        rec.error_reasons.push_back(*o.error);
      }
      if (o.meta.r > 0) {
        eta += o.meta.eta_n;
        mu_v += o.meta.mu_v;
        mu_l += std::max(o.meta.mu_u, o.meta.mu_v);
        ++generated;
      }
    }
    rec.success_rate = static_cast<double>(rec.successes) / static_cast<double>(rec.trials);
    rec.mean_runtime_ms = runtime / static_cast<double>(rec.trials);

    rec.rescaled_value = rec.value;
    if (config.rescale && generated > 0) {
      ExperimentTemplate t = config.base;
      apply_override(t, config.param, rec.value);
      const double g = static_cast<double>(generated);
      const std::map<std::string, double> symbols = {
          {"gamma", t.algorithm == Algorithm::RacosN ? t.racos_n.gamma : t.racos_i.gamma2},
          {"n1", static_cast<double>(t.problem.n1)},
          {"n2", static_cast<double>(t.problem.n2)},
          {"n_l", static_cast<double>(t.problem.n_l())},
          {"r", static_cast<double>(t.problem.r)},
          {"k", static_cast<double>(t.problem.k)},
          {"p", t.problem.p.value_or(1.0)},
          {"eta_n", eta / g},
          {"mu_v", mu_v / g},
          {"mu_l", mu_l / g}};
      try {
        rec.rescaled_value = rescale_value(*config.rescale, rec.value, symbols);
      } catch (const Error&) {
        rec.rescaled_value = std::nan("");
      }
    }
    result.records.push_back(std::move(rec));
  }
  return result;
}

void PhaseConfig::validate() const {
  require(base.trials >= 1, "phase: trials must be at least 1");
  require(!values1.empty() && !values2.empty(), "phase: grid must be nonempty");
  require(known_param(param1), "phase: unknown parameter '" + param1 + "'");
  require(known_param(param2), "phase: unknown parameter '" + param2 + "'");
}

PhaseResult run_phase(const PhaseConfig& config) {
  config.validate();
  const std::size_t n1 = config.values1.size();
  const std::size_t n2 = config.values2.size();
  const auto trials = static_cast<std::size_t>(config.base.trials);
  const std::size_t ncell = n1 * n2;

  std::vector<TrialOutcome> outcomes(ncell * trials);
  parallel_for(outcomes.size(), [&](std::size_t i) {
    const std::size_t cell = i / trials;
    const std::size_t ti = i % trials;
    const Overrides ov = {{config.param1, config.values1[cell / n2]},
                          {config.param2, config.values2[cell % n2]}};
    outcomes[i] = run_trial(config.base, ov, trial_seed(config.base.base_seed, cell, ti));
  });

  PhaseResult result;
  result.param1 = config.param1;
  result.param2 = config.param2;
  std::optional<double> full_runtime;
  for (std::size_t cell = 0; cell < ncell; ++cell) {
    PhaseCell c;
    c.value1 = config.values1[cell / n2];
    c.value2 = config.values2[cell % n2];
    double runtime = 0.0;
    Index successes = 0;
    for (std::size_t ti = 0; ti < trials; ++ti) {
      const TrialOutcome& o = outcomes[cell * trials + ti];
      runtime += o.runtime_ms;
      if (o.success) ++successes;
      if (o.error) ++c.errors;
    }
    c.success_rate = static_cast<double>(successes) / static_cast<double>(trials);
    c.mean_runtime_ms = runtime / static_cast<double>(trials);
    ExperimentTemplate t = config.base;
    apply_override(t, config.param1, c.value1);
    apply_override(t, config.param2, c.value2);
    if (!full_runtime && is_full_size(t)) full_runtime = c.mean_runtime_ms;
    result.cells.push_back(c);
  }

  if (!full_runtime) {
    ExperimentTemplate t = config.base;
    Overrides full;
    if (t.algorithm == Algorithm::RacosN) {
      full = {{"m", static_cast<double>(t.problem.n1)}, {"gamma", 1.0}};
    } else {
      full = {{"gamma1", 1.0}, {"gamma2", 1.0}};
    }
    std::vector<TrialOutcome> ref(trials);
    parallel_for(trials, [&](std::size_t ti) {
      ref[ti] = run_trial(config.base, full, trial_seed(config.base.base_seed, ncell, ti));
    });
    double runtime = 0.0;
    for (const auto& o : ref) runtime += o.runtime_ms;
    full_runtime = runtime / static_cast<double>(trials);
  }
  result.full_runtime_ms = *full_runtime;
  for (auto& c : result.cells)
    c.speedup = c.mean_runtime_ms > 0.0 ? result.full_runtime_ms / c.mean_runtime_ms : 0.0;
  return result;
}

void write_csv(const SweepResult& result, const std::filesystem::path& path) {
  auto out = open_out(path);
  out << kSweepCsvHeader << '\n';
  for (const auto& r : result.records) {
    out << result.param << ',' << fmt(r.value) << ',' << fmt(r.rescaled_value) << ',' << r.trials
        << ',' << r.successes << ',' << fmt(r.success_rate) << ',' << fmt_ms(r.mean_runtime_ms)
        << '\n';
  }
  if (!out) fail(ErrorKind::Io, "error writing " + path.string());
}

void write_csv(const PhaseResult& result, const std::filesystem::path& path) {
  auto out = open_out(path);
  out << kPhaseCsvHeader << '\n';
  for (const auto& c : result.cells) {
    out << fmt(c.value1) << ',' << fmt(c.value2) << ',' << fmt(c.success_rate) << ','
        << fmt_ms(c.mean_runtime_ms) << ',' << fmt(c.speedup) << '\n';
  }
  if (!out) fail(ErrorKind::Io, "error writing " + path.string());
}

nlohmann::json to_json(const SweepResult& result) {
  nlohmann::json j;
  j["param"] = result.param;
  j["records"] = nlohmann::json::array();
  for (const auto& r : result.records) {
    j["records"].push_back({{"value", r.value},
                            {"rescaled_value", r.rescaled_value},
                            {"trials", r.trials},
                            {"successes", r.successes},
                            {"success_rate", r.success_rate},
                            {"mean_runtime_ms", r.mean_runtime_ms},
                            {"errors", r.errors},
                            {"error_reasons", r.error_reasons}});
  }
  return j;
}

nlohmann::json to_json(const PhaseResult& result) {
  nlohmann::json j;
  j["param1"] = result.param1;
  j["param2"] = result.param2;
  j["full_runtime_ms"] = result.full_runtime_ms;
  j["cells"] = nlohmann::json::array();
  for (const auto& c : result.cells) {
    j["cells"].push_back({{"param1", c.value1},
                          {"param2", c.value2},
                          {"success_rate", c.success_rate},
                          {"mean_runtime_ms", c.mean_runtime_ms},
                          {"speedup", c.speedup},
                          {"errors", c.errors}});
  }
  return j;
}

void write_json(const SweepResult& result, const std::filesystem::path& path) {
  auto out = open_out(path);
  out << to_json(result).dump(2) << '\n';
}

void write_json(const PhaseResult& result, const std::filesystem::path& path) {
  auto out = open_out(path);
  out << to_json(result).dump(2) << '\n';
}

SweepResult read_sweep_csv(const std::filesystem::path& path) {
  SweepResult result;
  const auto rows = read_rows(path, kSweepCsvHeader);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const auto& c = rows[i];
    if (c.size() != 7)
      fail(ErrorKind::Io, path.string() + ": row " + std::to_string(i + 2) + ": expected 7 columns");
    if (i == 0) result.param = c[0];
    SweepRecord r;
    r.value = parse_num(c[1], path, i);
    r.rescaled_value = parse_num(c[2], path, i);
    r.trials = static_cast<Index>(parse_num(c[3], path, i));
    r.successes = static_cast<Index>(parse_num(c[4], path, i));
    r.success_rate = parse_num(c[5], path, i);
    r.mean_runtime_ms = parse_num(c[6], path, i);
    result.records.push_back(r);
  }
  return result;
}

PhaseResult read_phase_csv(const std::filesystem::path& path) {
  PhaseResult result;
  const auto rows = read_rows(path, kPhaseCsvHeader);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const auto& c = rows[i];
    if (c.size() != 5)
      fail(ErrorKind::Io, path.string() + ": row " + std::to_string(i + 2) + ": expected 5 columns");
    PhaseCell cell;
    cell.value1 = parse_num(c[0], path, i);
    cell.value2 = parse_num(c[1], path, i);
    cell.success_rate = parse_num(c[2], path, i);
    cell.mean_runtime_ms = parse_num(c[3], path, i);
    cell.speedup = parse_num(c[4], path, i);
    result.cells.push_back(cell);
  }
  return result;
}

SweepConfig sweep_config_from_json(const nlohmann::json& doc) {
  try {
    SweepConfig c;
    c.base = template_from_json(doc);
    c.param = doc.at("param").get<std::string>();
    c.label = doc.value("label", std::string());
    c.values = doc.at("values").get<std::vector<double>>();
    if (doc.contains("rescale") && !doc["rescale"].is_null()) c.rescale = doc["rescale"].get<std::string>();
    c.validate();
    return c;
  } catch (const nlohmann::json::exception& e) {
    fail(ErrorKind::InvalidInput, std::string("sweep config: ") + e.what());
  }
}

PhaseConfig phase_config_from_json(const nlohmann::json& doc) {
  try {
    PhaseConfig c;
    c.base = template_from_json(doc);
    c.param1 = doc.value("param1", c.param1);
    c.values1 = doc.at("values1").get<std::vector<double>>();
    c.param2 = doc.value("param2", c.param2);
    c.values2 = doc.at("values2").get<std::vector<double>>();
    c.validate();
    return c;
  } catch (const nlohmann::json::exception& e) {
    fail(ErrorKind::InvalidInput, std::string("phase config: ") + e.what());
  }
}

}  // namespace racos
