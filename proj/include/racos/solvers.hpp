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

#include <vector>

namespace racos {

struct SolverOptions {
  int max_iters = 2000;
  double primal_tolerance = 1e-6;
  double dual_tolerance = 1e-6;
  /// Multiplier on the data-scaled initial ADMM penalty 1.25/‖Y‖₂.
  double admm_penalty = 1.0;
  /// Residual balancing, checked every iteration: double or halve the
  /// penalty when primal and dual residuals drift more than 10× apart.
  bool adaptive_penalty = true;
  bool verbose = false;

  void validate() const;
};

/// {L̂, Ĉ} plus convergence diagnostics. Residuals are relative to ‖Y‖_F.
struct DecompositionResult {
  Matrix l_hat;
  Matrix c_hat;
  int iterations = 0;
  double final_primal_residual = 0.0;
  double final_dual_residual = 0.0;
  double objective = 0.0;
  bool converged = true;
  /// primal + dual residual per iteration.
  std::vector<double> merit_history;
};

/// Singular-value soft thresholding: σᵢ → max(σᵢ − τ, 0).
Matrix prox_nuclear(const Matrix& m, double tau);

/// Column-wise shrinkage: c → c·max(1 − τ/‖c‖₂, 0).
Matrix prox_l12(const Matrix& m, double tau);

/// ‖L‖_* + λ‖C‖_{1,2}.
double decomposition_objective(const Matrix& l, const Matrix& c, double lambda);

/// argmin ‖L‖_* + λ‖C‖_{1,2}  s.t. ‖Y − L − C‖_F ≤ ε₁.
///
/// Three-block ADMM on Y = L + C + E with E confined to the Frobenius ball of
/// radius ε₁. On exit ‖Y − L̂ − Ĉ‖_F ≤ ε₁ + primal_tolerance·‖Y‖_F when
/// `converged` is set; otherwise the last iterate is returned.
DecompositionResult outlier_pursuit_noisy(const Matrix& y, double lambda, double epsilon1,
                                          const SolverOptions& opts = {});

/// argmin ‖L‖_* + λ‖C‖_{1,2}  s.t. P_Ω(L + C) = Y.
///
/// Same splitting as outlier_pursuit_noisy, with E free off Ω and zero on Ω.
DecompositionResult manipulator_pursuit(const MaskedMatrix& y, double lambda,
                                        const SolverOptions& opts = {});

/// Expected Frobenius norm of i.i.d. N(0, σ²) noise over rows×cols entries.
double noise_radius(double sigma, Index rows, Index cols);

/// λ = 3√(1 + 1024·μ_V·r) / (14√ň₂).
double lambda_op_theory(Index n2_sub, Index r, double mu_v);

struct MpLambdaInputs {
  double p = 1.0;
  Index k = 1;
  Index r = 1;
  double mu_l = 1.0;
  /// γ₂·n_L, the expected number of sampled inlier columns.
  double n_l_sub = 1.0;
  /// Row count entering the trimmed formula's log(n₁ + n_L).
  Index n1 = 1;
  bool trimmed = false;
  /// ρ/p; used only when trimmed.
  double phi = 1.0;
};

/// Untrimmed: (1/48)·√(p / (9·k·r·μ_L·log²(4·n_l_sub))).
/// Trimmed:   (1/48)·√(1 / √((1+φ)·r·μ_L·k·log(n1 + n_l_sub))).
double lambda_mp_theory(const MpLambdaInputs& in);

}  // namespace racos
