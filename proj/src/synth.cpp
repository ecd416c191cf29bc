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

#include "racos/synth.hpp"

#include "racos/error.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

namespace racos {

namespace {

Matrix gaussian_matrix(Index rows, Index cols, double stddev, const RngSeed& seed) {
  auto rng = seed.engine();
  std::normal_distribution<double> normal(0.0, stddev);
  Matrix out(rows, cols);
  for (Index j = 0; j < cols; ++j)
    for (Index i = 0; i < rows; ++i) out(i, j) = normal(rng);
  return out;
}

ColumnSet nonzero_columns(const Matrix& m) {
  std::vector<Index> idx;
  for (Index j = 0; j < m.cols(); ++j) {
    if (m.col(j).squaredNorm() > 0.0) idx.push_back(j);
  }
  return ColumnSet(m.cols(), std::move(idx));
}

ProblemMeta recompute_meta(const SyntheticProblem& p, Index r) {
  ProblemMeta meta;
  meta.r = r;
  meta.k = p.truth.size();
  meta.n_l = p.l.cols() - meta.k;
  if (p.l.squaredNorm() > 0.0) {
    meta.mu_v = column_incoherence(p.l).mu_v;
    meta.mu_u = row_incoherence(p.l).mu_u;
    const CompactSvd svd = compact_svd(p.l, 1e-9);
    meta.sigma_r_l = svd.rank() >= r && r > 0 ? svd.sigma(r - 1) : 0.0;
  }
  meta.eta_n = p.noise ? column_norms(*p.noise).maxCoeff() : 0.0;
  return meta;
}

}  // namespace

std::string noise_name(const NoiseKind& kind) {
  if (std::holds_alternative<GaussianNoise>(kind)) return "gaussian";
  if (std::holds_alternative<LaplaceNoise>(kind)) return "laplace";
  return "none";
}

double noise_level(const NoiseKind& kind) {
  if (const auto* g = std::get_if<GaussianNoise>(&kind)) return g->sigma;
  if (const auto* l = std::get_if<LaplaceNoise>(&kind)) return l->scale;
  return 0.0;
}

void ProblemSpec::validate() const {
  require(n1 >= 1 && n2 >= 1, "ProblemSpec: dimensions must be positive");
  require(k >= 0 && k < n2, "ProblemSpec: need 0 <= k < n2");
  require(r >= 1 && r <= std::min(n1, n_l()), "ProblemSpec: need 1 <= r <= min(n1, n2 - k)");
  if (sigma_r) require(*sigma_r > 0.0, "ProblemSpec: sigma_r must be positive");
  if (p) require(*p > 0.0 && *p <= 1.0, "ProblemSpec: p must lie in (0, 1]");
  require(noise_level(noise) >= 0.0, "ProblemSpec: noise level must be nonnegative");
}

Matrix SyntheticProblem::observed() const {
  Matrix m = l + c;
  if (noise) m += *noise;
  return m;
}

MaskedMatrix SyntheticProblem::masked() const {
  require(mask.has_value(), "SyntheticProblem: no observation mask");
  return apply_mask(l + c, *mask);
}

Matrix gen_low_rank(Index n1, Index n_l, Index k, Index r, std::optional<double> sigma_r_target,
                    const RngSeed& seed) {
  require(r >= 1 && r <= std::min(n1, n_l), "gen_low_rank: need 1 <= r <= min(n1, n_l)");
  require(k >= 0, "gen_low_rank: k must be nonnegative");
  const Matrix u = gaussian_matrix(n1, r, 1.0, seed.child("u"));
  const Matrix v = gaussian_matrix(n_l, r, 1.0, seed.child("v"));
  Matrix l = Matrix::Zero(n1, n_l + k);
  l.leftCols(n_l) = u * v.transpose();
  if (sigma_r_target) {
    require(*sigma_r_target > 0.0, "gen_low_rank: sigma_r target must be positive");
    // (σ_r / σ_r(L₀))·U₀Σ₀V₀ᵀ is the same matrix as (σ_r / σ_r(L₀))·L₀.
    const Vector s = Eigen::BDCSVD<Matrix>(l.leftCols(n_l)).singularValues();
    l *= *sigma_r_target / s(r - 1);
  }
  return l;
}

Matrix gen_outliers(Index n1, Index n_l, Index k, Index r, const RngSeed& seed) {
  require(k >= 0 && r >= 1, "gen_outliers: need k >= 0 and r >= 1");
  Matrix c = Matrix::Zero(n1, n_l + k);
  if (k > 0) c.rightCols(k) = gaussian_matrix(n1, k, std::sqrt(static_cast<double>(r)), seed);
  return c;
}

Matrix gen_noise(Index n1, Index n2, const NoiseKind& kind, const RngSeed& seed) {
  return std::visit(
      [&](const auto& k) -> Matrix {
        using T = std::decay_t<decltype(k)>;
        if constexpr (std::is_same_v<T, NoNoise>) {
          return Matrix::Zero(n1, n2);
        } else if constexpr (std::is_same_v<T, GaussianNoise>) {
          require(k.sigma >= 0.0, "gen_noise: sigma must be nonnegative");
          if (k.sigma == 0.0) return Matrix::Zero(n1, n2);
          return gaussian_matrix(n1, n2, k.sigma, seed);
        } else {
          require(k.scale >= 0.0, "gen_noise: scale must be nonnegative");
          if (k.scale == 0.0) return Matrix::Zero(n1, n2);
          auto rng = seed.engine();
          std::exponential_distribution<double> expo(1.0 / k.scale);
          std::bernoulli_distribution sign(0.5);
          Matrix out(n1, n2);
          for (Index j = 0; j < n2; ++j)
            for (Index i = 0; i < n1; ++i) {
              const double mag = expo(rng);
              out(i, j) = sign(rng) ? mag : -mag;
            }
          return out;
        }
      },
      kind);
}

SyntheticProblem assemble_noisy(Matrix l, Matrix c, std::optional<Matrix> noise,
                                const NoiseKind& kind, Index r, const RngSeed& seed) {
  require(l.rows() == c.rows() && l.cols() == c.cols(), "assemble: L and C dimensions differ");
  if (noise) {
    require(noise->rows() == l.rows() && noise->cols() == l.cols(),
            "assemble: noise dimensions differ");
  }
  SyntheticProblem p;
  p.truth = nonzero_columns(c);
  p.l = std::move(l);
  p.c = std::move(c);
  p.noise = std::move(noise);
  p.meta = recompute_meta(p, r);
  p.meta.noise_kind = noise_name(kind);
  p.meta.noise_level = noise_level(kind);
  p.meta.seed = seed;
  return p;
}

SyntheticProblem assemble_incomplete(Matrix l, Matrix c, ObservationMask mask, double p_rate,
                                     Index r, const RngSeed& seed) {
  require(l.rows() == c.rows() && l.cols() == c.cols(), "assemble: L and C dimensions differ");
  require(mask.rows() == l.rows() && mask.cols() == l.cols(), "assemble: mask dimensions differ");
  SyntheticProblem p;
  p.truth = nonzero_columns(c);
  p.l = std::move(l);
  p.c = std::move(c);
  p.mask = std::move(mask);
  p.meta = recompute_meta(p, r);
  p.meta.p = p_rate;
  p.meta.seed = seed;
  return p;
}

SyntheticProblem generate(const ProblemSpec& spec, const RngSeed& seed) {
  spec.validate();
  const Index n_l = spec.n_l();
  Matrix l = gen_low_rank(spec.n1, n_l, spec.k, spec.r, spec.sigma_r, seed.child("low_rank"));
  Matrix c = gen_outliers(spec.n1, n_l, spec.k, spec.r, seed.child("outliers"));
  if (spec.shuffle) {
    std::vector<Index> perm(static_cast<std::size_t>(spec.n2));
    std::iota(perm.begin(), perm.end(), 0);
    auto rng = seed.child("shuffle").engine();
    std::shuffle(perm.begin(), perm.end(), rng);
    l = Matrix(l(Eigen::all, perm));
    c = Matrix(c(Eigen::all, perm));
  }
  if (spec.p) {
    ObservationMask mask = sample_mask(spec.n1, spec.n2, *spec.p, seed.child("mask"));
    return assemble_incomplete(std::move(l), std::move(c), std::move(mask), *spec.p, spec.r, seed);
  }
  std::optional<Matrix> noise;
  if (!std::holds_alternative<NoNoise>(spec.noise)) {
    noise = gen_noise(spec.n1, spec.n2, spec.noise, seed.child("noise"));
  }
  return assemble_noisy(std::move(l), std::move(c), std::move(noise), spec.noise, spec.r, seed);
}

}  // namespace racos
