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

#include <optional>
#include <string>
#include <variant>

namespace racos {

struct NoNoise {};
struct GaussianNoise {
  double sigma = 0.0;
};
/// Zero-mean Laplace with classical scale b (variance 2b²).
struct LaplaceNoise {
  double scale = 0.0;
};
using NoiseKind = std::variant<NoNoise, GaussianNoise, LaplaceNoise>;

std::string noise_name(const NoiseKind& kind);
double noise_level(const NoiseKind& kind);

/// Generator arguments for one synthetic instance. Outliers occupy the
/// trailing k columns unless `shuffle` is set.
struct ProblemSpec {
  Index n1 = 100;
  Index n2 = 400;
  Index r = 5;
  Index k = 80;
  std::optional<double> sigma_r;
  NoiseKind noise = NoNoise{};
  /// Entrywise observation rate; set for the incomplete model.
  std::optional<double> p;
  bool shuffle = false;

  Index n_l() const noexcept { return n2 - k; }
  void validate() const;
};

struct ProblemMeta {
  Index r = 0;
  Index k = 0;
  Index n_l = 0;
  double mu_v = 1.0;
  double mu_u = 1.0;
  double sigma_r_l = 0.0;
  double eta_n = 0.0;
  std::string noise_kind = "none";
  double noise_level = 0.0;
  std::optional<double> p;
  RngSeed seed;
};

struct SyntheticProblem {
  Matrix l;
  Matrix c;
  std::optional<Matrix> noise;
  std::optional<ObservationMask> mask;
  ColumnSet truth;
  ProblemMeta meta;

  /// L + C + N (noisy model).
  Matrix observed() const;
  /// P_Ω(L + C) (incomplete model).
  MaskedMatrix masked() const;
};

/// [U·Vᵀ 0_{n1×k}] with U, V i.i.d. N(0, 1), rescaled so σ_r equals the
/// target when one is given.
Matrix gen_low_rank(Index n1, Index n_l, Index k, Index r, std::optional<double> sigma_r_target,
                    const RngSeed& seed);

/// [0_{n1×n_l} W] with W i.i.d. N(0, r).
Matrix gen_outliers(Index n1, Index n_l, Index k, Index r, const RngSeed& seed);

Matrix gen_noise(Index n1, Index n2, const NoiseKind& kind, const RngSeed& seed);

/// Noisy model M = L + C + N. Meta is recomputed from the parts.
SyntheticProblem assemble_noisy(Matrix l, Matrix c, std::optional<Matrix> noise,
                                const NoiseKind& kind, Index r, const RngSeed& seed);

/// Incomplete model M = P_Ω(L + C).
SyntheticProblem assemble_incomplete(Matrix l, Matrix c, ObservationMask mask, double p, Index r,
                                     const RngSeed& seed);

/// Full instance from a spec: noisy when spec.p is empty, incomplete otherwise.
SyntheticProblem generate(const ProblemSpec& spec, const RngSeed& seed);

}  // namespace racos
