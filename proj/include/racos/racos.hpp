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

#include "racos/linalg.hpp"
#include "racos/sampling.hpp"
#include "racos/solvers.hpp"

#include <json.hpp>

#include <optional>
#include <variant>
#include <vector>

namespace racos {

// λ policies.
struct FixedLambda {
  double value = 0.4;
};
/// λ from the theory formula at the sampled column count; rank and μ_V supplied.
struct TheoryLambdaOp {
  Index r = 1;
  double mu_v = 1.0;
};
/// Manipulator Pursuit λ from the caller's theory inputs.
struct TheoryLambdaMp {
  MpLambdaInputs inputs;
};

// α policies for the Step-1 singular value hard threshold.
struct FixedAlpha {
  double value = 0.0;
};
struct EnergyFraction {
  double fraction = 0.99;
};
/// Midpoint of the Gaussian-noise α window for known noise level σ.
struct NoiseWindow {
  double sigma = 0.0;
  double delta = 0.1;
};

// ε₂ policies for the Step-2 column threshold.
struct FixedEpsilon2 {
  double value = 0.0;
};
struct LargestGap {};
/// Needs ground truth; places ε₂ in the middle of the separating interval.
struct OracleEpsilon2 {
  ColumnSet truth;
};

using LambdaOpPolicy = std::variant<FixedLambda, TheoryLambdaOp>;
using LambdaMpPolicy = std::variant<FixedLambda, TheoryLambdaMp>;
using AlphaPolicy = std::variant<FixedAlpha, EnergyFraction, NoiseWindow>;
using Epsilon2Policy = std::variant<FixedEpsilon2, LargestGap, OracleEpsilon2>;

struct RacosNParams {
  double gamma = 0.2;
  Index m = 30;
  /// Rows of Ψ; 0 means Ψ = I.
  Index q = 20;
  LambdaOpPolicy lambda = FixedLambda{0.4};
  AlphaPolicy alpha = EnergyFraction{0.99};
  double epsilon1 = 0.0;
  Epsilon2Policy epsilon2 = LargestGap{};
  RngSeed seed;
  SolverOptions solver;

  void validate() const;
};

struct RacosIParams {
  double gamma1 = 0.5;
  double gamma2 = 0.2;
  LambdaMpPolicy lambda = FixedLambda{0.4};
  /// Trimming level ρ; disabled when empty.
  std::optional<double> trim_rho;
  /// Absolute detection floor. When empty, residual_floor_factor times the
  /// RMS column norm of Y₍₁₎ is used.
  std::optional<double> residual_floor;
  double residual_floor_factor = 1e-3;
  RngSeed seed;
  SolverOptions solver;

  void validate() const;
};

struct SolverStats {
  int iterations = 0;
  double primal_residual = 0.0;
  double dual_residual = 0.0;
  double objective = 0.0;
  bool converged = true;
};

struct OutlierReport {
  ColumnSet estimated_outliers;
  std::vector<double> residuals;
  double epsilon2_used = 0.0;
  Index subspace_rank = 0;
  ColumnSet sampled_columns;
  std::optional<ColumnSet> sampled_rows;
  Index measurement_count = 0;
  double lambda_used = 0.0;
  double alpha_used = 0.0;
  /// Columns with no observed entry after row sampling (RACOS-I).
  std::vector<Index> unobservable;
  /// Columns whose row-restricted subspace lost rank (RACOS-I).
  std::vector<Index> rank_deficient;
  SolverStats solver_stats;
};

/// Pre-drawn randomness for RACOS-N. `psi` empty (0 rows) means Ψ = I.
struct RacosNOperators {
  Matrix phi;
  ColumnSet columns;
  Matrix psi;
};

/// Draws Φ, S and Ψ from params.seed.
RacosNOperators draw_racos_n_operators(Index n1, Index n2, const RacosNParams& params);

/// RACOS-N with freshly drawn operators.
OutlierReport racos_n(const Matrix& m, const RacosNParams& params);

/// RACOS-N with caller-supplied operators.
OutlierReport racos_n(const Matrix& m, const RacosNOperators& ops, const RacosNParams& params);

/// Full-data baseline: Outlier Pursuit on M itself, hard threshold, then
/// column residuals with Φ = Ψ = I.
OutlierReport outlier_pursuit_detect(const Matrix& m, const RacosNParams& params);

/// RACOS-I.
OutlierReport racos_i(const MaskedMatrix& m, const RacosIParams& params);

/// Residual of the observed part of `column` after projecting out the span of
/// the matching rows of `factor`. Returns the residual and the rank of the
/// restricted factor.
std::pair<double, Index> restricted_residual(const Matrix& factor, const Vector& column,
                                             const std::vector<Index>& rows);

/// Picks ε₂ for the given residuals.
double select_epsilon2(const std::vector<double>& residuals, const Epsilon2Policy& policy,
                       double floor);

/// Default floor for the largest-gap policy: 1e-9·max(1, median residual).
double default_epsilon2_floor(const std::vector<double>& residuals);

/// {j : residuals[j] > threshold}.
ColumnSet threshold_columns(const std::vector<double>& residuals, double threshold);

/// min over true outliers > max over true inliers (strict).
bool separation_success(const std::vector<double>& residuals, const ColumnSet& truth);

nlohmann::json to_json(const OutlierReport& report);

}  // namespace racos
