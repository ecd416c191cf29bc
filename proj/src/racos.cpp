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

#include "racos/racos.hpp"

#include "racos/bounds.hpp"
#include "racos/error.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace racos {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

SolverStats stats_of(const DecompositionResult& r) {
  return {r.iterations, r.final_primal_residual, r.final_dual_residual, r.objective, r.converged};
}

double resolve_lambda(const LambdaOpPolicy& policy, Index sampled_columns) {
  return std::visit(overloaded{
                        [](const FixedLambda& f) { return f.value; },
                        [&](const TheoryLambdaOp& t) {
                          return lambda_op_theory(sampled_columns, t.r, t.mu_v);
                        },
                    },
                    policy);
}

double resolve_alpha(const AlphaPolicy& policy, const CompactSvd& svd, Index n1, Index n2,
                     double gamma) {
  return std::visit(overloaded{
                        [](const FixedAlpha& f) { return f.value; },
                        [&](const EnergyFraction& e) {
                          return svd.rank() == 0 ? 0.0
                                                 : alpha_from_energy_fraction(svd, e.fraction);
                        },
                        [&](const NoiseWindow& w) {
                          TheoryInputs in;
                          in.n1 = static_cast<double>(n1);
                          in.n2 = static_cast<double>(n2);
                          in.gamma = gamma;
                          in.sigma = w.sigma;
                          in.delta = w.delta;
                          const Interval win = alpha_window_gaussian(in);
                          return 0.5 * (win.lo + win.hi);
                        },
                    },
                    policy);
}

std::vector<double> to_std(const Vector& v) { return {v.data(), v.data() + v.size()}; }

// Step 1 subspace plus Step 2 residuals, shared by RACOS-N and the full-data
// baseline.
OutlierReport detect_from_sketch(const Matrix& sketch, const ColumnSet& columns,
                                 const Matrix& psi, const RacosNParams& params, Index n1,
                                 double gamma) {
  OutlierReport report;
  report.sampled_columns = columns;
  const Matrix y1 = gather_columns(sketch, columns);
  report.lambda_used = resolve_lambda(params.lambda, columns.size());
  const DecompositionResult op =
      outlier_pursuit_noisy(y1, report.lambda_used, params.epsilon1, params.solver);
  report.solver_stats = stats_of(op);

  const CompactSvd l_svd = compact_svd(op.l_hat);
  report.alpha_used = resolve_alpha(params.alpha, l_svd, n1, sketch.cols(), gamma);
  const CompactSvd kept = truncate_svd(l_svd, report.alpha_used);
  report.subspace_rank = kept.rank();

  Matrix y2 = project_complement(kept.u, sketch);
  if (psi.rows() > 0) y2 = psi * y2;
  report.residuals = to_std(column_norms(y2));

  const double floor = default_epsilon2_floor(report.residuals);
  report.epsilon2_used = select_epsilon2(report.residuals, params.epsilon2, floor);
  report.estimated_outliers = threshold_columns(report.residuals, report.epsilon2_used);
  return report;
}

}  // namespace

void RacosNParams::validate() const {
  require(gamma > 0.0 && gamma <= 1.0, "RacosNParams: gamma must lie in (0, 1]");
  require(m >= 1, "RacosNParams: m must be at least 1");
  require(q >= 0, "RacosNParams: q must be nonnegative");
  require(epsilon1 >= 0.0, "RacosNParams: epsilon1 must be nonnegative");
  if (const auto* f = std::get_if<FixedLambda>(&lambda)) {
    require(f->value > 0.0, "RacosNParams: lambda must be positive");
  }
  solver.validate();
}

void RacosIParams::validate() const {
  require(gamma1 > 0.0 && gamma1 <= 1.0, "RacosIParams: gamma1 must lie in (0, 1]");
  require(gamma2 > 0.0 && gamma2 <= 1.0, "RacosIParams: gamma2 must lie in (0, 1]");
  if (trim_rho) require(*trim_rho > 0.0 && *trim_rho <= 1.0, "RacosIParams: rho must lie in (0, 1]");
  if (residual_floor) require(*residual_floor >= 0.0, "RacosIParams: residual_floor must be nonnegative");
  require(residual_floor_factor >= 0.0, "RacosIParams: residual_floor_factor must be nonnegative");
  if (const auto* f = std::get_if<FixedLambda>(&lambda)) {
    require(f->value > 0.0, "RacosIParams: lambda must be positive");
  }
  solver.validate();
}

RacosNOperators draw_racos_n_operators(Index n1, Index n2, const RacosNParams& params) {
  RacosNOperators ops;
  ops.phi = gaussian_jl(params.m, n1, params.seed.child("phi"));
  ops.columns = bernoulli_select(n2, params.gamma, params.seed.child("columns"));
  ops.psi = params.q > 0 ? gaussian_jl(params.q, params.m, params.seed.child("psi"))
                         : Matrix(0, params.m);
  return ops;
}

OutlierReport racos_n(const Matrix& m, const RacosNParams& params) {
  params.validate();
  return racos_n(m, draw_racos_n_operators(m.rows(), m.cols(), params), params);
}

OutlierReport racos_n(const Matrix& m, const RacosNOperators& ops, const RacosNParams& params) {
  params.validate();
  require_finite(m, "racos_n");
  require(ops.phi.cols() == m.rows(), "racos_n: Phi column count must equal rows of M");
  require(ops.columns.ambient() == m.cols(), "racos_n: column sample ambient size mismatch");
  require(ops.psi.rows() == 0 || ops.psi.cols() == ops.phi.rows(),
          "racos_n: Psi column count must equal rows of Phi");
  if (ops.columns.empty()) fail(ErrorKind::EmptySample, "racos_n: column sample S is empty");

  const Matrix sketch = ops.phi * m;
  OutlierReport report = detect_from_sketch(sketch, ops.columns, ops.psi, params, m.rows(), params.gamma);
  const Index sketch_rows = ops.phi.rows();
  report.measurement_count = ops.psi.rows() > 0
                                 ? sketch_rows * ops.columns.size() + ops.psi.rows() * m.cols()
                                 : sketch_rows * m.cols();
  return report;
}

OutlierReport outlier_pursuit_detect(const Matrix& m, const RacosNParams& params) {
  params.validate();
  require_finite(m, "outlier_pursuit_detect");
  OutlierReport report =
      detect_from_sketch(m, ColumnSet::all(m.cols()), Matrix(0, m.rows()), params,
                                              m.rows(), 1.0);
  report.measurement_count = m.size();
  return report;
}

std::pair<double, Index> restricted_residual(const Matrix& factor, const Vector& column,
                                             const std::vector<Index>& rows) {
  const Vector x = column(rows);
  if (factor.cols() == 0) return {x.norm(), 0};
  const Matrix restricted = factor(rows, Eigen::all);
  const Matrix q = column_space_basis(restricted, 1e-9);
  const Vector resid = x - q * (q.transpose() * x);
  return {resid.norm(), q.cols()};
}

OutlierReport racos_i(const MaskedMatrix& m, const RacosIParams& params) {
  params.validate();
  require(m.mask.rows() == m.values.rows() && m.mask.cols() == m.values.cols(),
          "racos_i: mask dimension mismatch");
  require(m.mask.count() > 0, "racos_i: empty observation mask");
  require_finite(m.values, "racos_i");
  const Index n1 = m.values.rows();
  const Index n2 = m.values.cols();

  OutlierReport report;
  const ColumnSet rows = bernoulli_select(n1, params.gamma1, params.seed.child("rows"));
  const ColumnSet cols = bernoulli_select(n2, params.gamma2, params.seed.child("columns"));
  if (rows.empty()) fail(ErrorKind::EmptySample, "racos_i: row sample S1 is empty");
  if (cols.empty()) fail(ErrorKind::EmptySample, "racos_i: column sample S2 is empty");
  report.sampled_rows = rows;
  report.sampled_columns = cols;

  // ΦM = I_{S1,:}·M together with its mask.
  ObservationMask phi_mask(rows.size(), n2, false);
  for (Index a = 0; a < rows.size(); ++a) {
    const Index i = rows.indices()[static_cast<std::size_t>(a)];
    for (Index j = 0; j < n2; ++j) phi_mask.set(a, j, m.mask.observed(i, j));
  }
  const MaskedMatrix sketch = apply_mask(gather_rows(m.values, rows), phi_mask);
  report.measurement_count = phi_mask.count();

  ObservationMask y1_mask(rows.size(), cols.size(), false);
  for (Index b = 0; b < cols.size(); ++b) {
    const Index j = cols.indices()[static_cast<std::size_t>(b)];
    for (Index a = 0; a < rows.size(); ++a) y1_mask.set(a, b, phi_mask.observed(a, j));
  }
  MaskedMatrix y1 = apply_mask(gather_columns(sketch.values, cols), y1_mask);
  if (params.trim_rho) {
    y1 = trim_columns(y1, *params.trim_rho, rows.size(), params.seed.child("trim"));
  }
  if (y1.mask.count() == 0) fail(ErrorKind::EmptySample, "racos_i: no observed entries in Y(1)");

  report.lambda_used = std::visit(
      overloaded{
          [](const FixedLambda& f) { return f.value; },
          [](const TheoryLambdaMp& t) { return lambda_mp_theory(t.inputs); },
      },
      params.lambda);
  const DecompositionResult mp = manipulator_pursuit(y1, report.lambda_used, params.solver);
  report.solver_stats = stats_of(mp);

  const CompactSvd l_svd = compact_svd(mp.l_hat);
  report.subspace_rank = l_svd.rank();
  const Matrix factor = l_svd.u * l_svd.sigma.asDiagonal();

  report.residuals.assign(static_cast<std::size_t>(n2), 0.0);
  for (Index j = 0; j < n2; ++j) {
    const std::vector<Index> observed = phi_mask.observed_rows(j);
    if (observed.empty()) {
      report.unobservable.push_back(j);
      continue;
    }
    const auto [resid, rank] = restricted_residual(factor, sketch.values.col(j), observed);
    report.residuals[static_cast<std::size_t>(j)] = resid;
    if (rank < report.subspace_rank) report.rank_deficient.push_back(j);
  }

  const double rms = y1.values.norm() / std::sqrt(static_cast<double>(y1.values.cols()));
  report.epsilon2_used =
      params.residual_floor ? *params.residual_floor : params.residual_floor_factor * rms;
  report.estimated_outliers = threshold_columns(report.residuals, report.epsilon2_used);
  return report;
}

double default_epsilon2_floor(const std::vector<double>& residuals) {
  if (residuals.empty()) return 1e-9;
  std::vector<double> sorted = residuals;
  const auto mid = sorted.begin() + static_cast<std::ptrdiff_t>(sorted.size() / 2);
  std::nth_element(sorted.begin(), mid, sorted.end());
  return 1e-9 * std::max(1.0, *mid);
}

double select_epsilon2(const std::vector<double>& residuals, const Epsilon2Policy& policy,
                       double floor) {
  require(!residuals.empty(), "select_epsilon2: residuals must be nonempty");
  require(floor >= 0.0, "select_epsilon2: floor must be nonnegative");
  return std::visit(
      overloaded{
          [](const FixedEpsilon2& f) { return f.value; },
          [&](const LargestGap&) {
            std::vector<double> sorted = residuals;
            std::sort(sorted.begin(), sorted.end(), std::greater<>());
            if (sorted.front() < floor) return floor;
            double best_gap = -1.0;
            double threshold = floor;
            for (std::size_t i = 0; i + 1 < sorted.size(); ++i) {
              const double gap = sorted[i] - sorted[i + 1];
              if (gap > best_gap) {
                best_gap = gap;
                threshold = 0.5 * (sorted[i] + sorted[i + 1]);
              }
            }
            // A single residual has no gap; flag it only if it clears the floor.
            return sorted.size() == 1 ? floor : std::max(threshold, floor);
          },
          [&](const OracleEpsilon2& o) {
            require(o.truth.ambient() == static_cast<Index>(residuals.size()),
                    "select_epsilon2: truth ambient size mismatch");
            require(!o.truth.empty() && o.truth.size() < o.truth.ambient(),
                    "select_epsilon2: oracle needs both outliers and inliers");
            double min_out = INFINITY;
            double max_in = -INFINITY;
            for (std::size_t j = 0; j < residuals.size(); ++j) {
              if (o.truth.contains(static_cast<Index>(j))) {
                min_out = std::min(min_out, residuals[j]);
              } else {
                max_in = std::max(max_in, residuals[j]);
              }
            }
            if (!(min_out > max_in)) {
              fail(ErrorKind::NoSeparation, "select_epsilon2: no threshold separates outliers");
            }
            return 0.5 * (min_out + max_in);
          },
      },
      policy);
}

ColumnSet threshold_columns(const std::vector<double>& residuals, double threshold) {
  std::vector<Index> idx;
  for (std::size_t j = 0; j < residuals.size(); ++j) {
    if (residuals[j] > threshold) idx.push_back(static_cast<Index>(j));
  }
  return ColumnSet(static_cast<Index>(residuals.size()), std::move(idx));
}

bool separation_success(const std::vector<double>& residuals, const ColumnSet& truth) {
  require(truth.ambient() == static_cast<Index>(residuals.size()),
          "separation_success: truth ambient size mismatch");
  require(!truth.empty() && truth.size() < truth.ambient(),
          "separation_success: truth must contain both outliers and inliers");
  double min_out = INFINITY;
  double max_in = -INFINITY;
  for (std::size_t j = 0; j < residuals.size(); ++j) {
    if (truth.contains(static_cast<Index>(j))) {
      min_out = std::min(min_out, residuals[j]);
    } else {
      max_in = std::max(max_in, residuals[j]);
    }
  }
  return min_out > max_in;
}

nlohmann::json to_json(const OutlierReport& report) {
  nlohmann::json j;
  j["estimated_outliers"] = report.estimated_outliers.indices();
  j["residuals"] = report.residuals;
  j["epsilon2_used"] = report.epsilon2_used;
  j["subspace_rank"] = report.subspace_rank;
  j["measurement_count"] = report.measurement_count;
  j["lambda"] = report.lambda_used;
  j["alpha"] = report.alpha_used;
  j["sampled_columns"] = report.sampled_columns.indices();
  if (report.sampled_rows) j["sampled_rows"] = report.sampled_rows->indices();
  j["flags"] = {{"unobservable", report.unobservable},
                {"rank_deficient", report.rank_deficient}};
  j["solver_stats"] = {{"iterations", report.solver_stats.iterations},
                       {"primal_residual", report.solver_stats.primal_residual},
                       {"dual_residual", report.solver_stats.dual_residual},
                       {"objective", report.solver_stats.objective},
                       {"converged", report.solver_stats.converged}};
  return j;
}

}  // namespace racos
