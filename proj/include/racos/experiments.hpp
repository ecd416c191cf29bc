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


#pragma once

#include "racos/racos.hpp"
#include "racos/synth.hpp"

#include <json.hpp>

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace racos {

enum class Algorithm { RacosN, RacosI };
enum class SuccessRule { Separation, ExactSupport };

/// Template for one Monte Carlo experiment. Swept parameter names:
/// sigma_r, sigma_n, gamma, m, m_ratio, q, lambda, gamma1, gamma2, p, k, r,
/// trim_rho, epsilon1.
struct ExperimentTemplate {
  Algorithm algorithm = Algorithm::RacosN;
  ProblemSpec problem;
  RacosNParams racos_n;
  RacosIParams racos_i;
  Index trials = 20;
  std::uint64_t base_seed = 0;
  SuccessRule success_rule = SuccessRule::ExactSupport;
  /// RACOS-N only: set ε₁ per trial to the expected Frobenius norm of the
  /// sketched noise, noise_sd·√(n1·γn2).
  bool epsilon1_from_noise = false;
};

struct SweepConfig {
  ExperimentTemplate base;
  std::string param = "gamma";
  /// Written to the CSV `param` column; defaults to `param`.
  std::string label;
  std::vector<double> values;
  /// Rescaling formula id, see rescale_value.
  std::optional<std::string> rescale;

  void validate() const;
};

struct SweepRecord {
  double value = 0.0;
  double rescaled_value = 0.0;
  Index trials = 0;
  Index successes = 0;
  double success_rate = 0.0;
  double mean_runtime_ms = 0.0;
  /// Trials that raised an error (counted as failures).
  Index errors = 0;
  std::vector<std::string> error_reasons;
};

struct SweepResult {
  std::string param;
  std::vector<SweepRecord> records;
};

/// Formula ids: none, sigma_r, gamma, m_log_k, m_log_n2, gamma1, gamma2.
/// Returns raw divided by the formula value.
double rescale_value(const std::string& formula, double raw,
                     const std::map<std::string, double>& params);

struct TrialOutcome {
  bool success = false;
  double runtime_ms = 0.0;
  std::optional<std::string> error;
  ProblemMeta meta;
  OutlierReport report;
};

/// Runs one seeded trial with `name = value` applied to the template.
/// An empty name runs the template unchanged.
TrialOutcome run_trial(const ExperimentTemplate& base, const std::vector<std::pair<std::string, double>>& overrides,
                       const RngSeed& seed);

/// Seed used for trial `trial_index` at grid point `value_index`.
RngSeed trial_seed(std::uint64_t base_seed, std::uint64_t value_index, std::uint64_t trial_index);

SweepResult run_sweep(const SweepConfig& config);

struct PhaseConfig {
  ExperimentTemplate base;
  std::string param1 = "m_ratio";
  std::vector<double> values1;
  std::string param2 = "gamma";
  std::vector<double> values2;

  void validate() const;
};

struct PhaseCell {
  double value1 = 0.0;
  double value2 = 0.0;
  double success_rate = 0.0;
  double mean_runtime_ms = 0.0;
  double speedup = 0.0;
  Index errors = 0;
};

struct PhaseResult {
  std::string param1;
  std::string param2;
  /// Row-major over (values1, values2).
  std::vector<PhaseCell> cells;
  /// Mean runtime of the full model (no sketching) used for speedups.
  double full_runtime_ms = 0.0;
};

/// A cell is full-size when it samples everything (m = n1 and γ = 1 for
/// RACOS-N, γ₁ = γ₂ = 1 for RACOS-I); such cells run the unsketched model.
/// When no cell is full-size the full model is timed separately.
PhaseResult run_phase(const PhaseConfig& config);

/// Size of the worker pool: hardware concurrency capped by RACOS_THREADS.
unsigned worker_count(std::size_t tasks);

void write_csv(const SweepResult& result, const std::filesystem::path& path);
void write_csv(const PhaseResult& result, const std::filesystem::path& path);
void write_json(const SweepResult& result, const std::filesystem::path& path);
void write_json(const PhaseResult& result, const std::filesystem::path& path);

SweepResult read_sweep_csv(const std::filesystem::path& path);
PhaseResult read_phase_csv(const std::filesystem::path& path);

nlohmann::json to_json(const SweepResult& result);
nlohmann::json to_json(const PhaseResult& result);

/// Config documents as accepted by `--config`.
SweepConfig sweep_config_from_json(const nlohmann::json& doc);
PhaseConfig phase_config_from_json(const nlohmann::json& doc);

inline constexpr const char* kSweepCsvHeader =
    "param,value,rescaled_value,trials,successes,success_rate,mean_runtime_ms";
inline constexpr const char* kPhaseCsvHeader =
    "param1,param2,success_rate,mean_runtime_ms,speedup";

}  // namespace racos
