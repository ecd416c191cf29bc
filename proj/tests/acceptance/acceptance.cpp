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


// Acceptance gate. Prints one PASS/FAIL line per criterion and exits
// nonzero if any selected criterion fails. `--only N` runs a single one.

#include "racos/bounds.hpp"
#include "racos/experiments.hpp"
#include "racos/racos.hpp"
#include "racos/sampling.hpp"
#include "racos/solvers.hpp"
#include "racos/synth.hpp"

#include "../support/oracles.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

using namespace racos;

namespace {

struct Verdict {
  bool pass = false;
  std::string detail;
};

std::string num(double v, int prec = 3) {
  std::ostringstream os;
  os.precision(prec);
  os << v;
  return os.str();
}

std::string curve(const SweepResult& res) {
  std::string s;
  for (const auto& r : res.records) {
    if (!s.empty()) s += ' ';
    s += num(r.rescaled_value) + ":" + num(r.success_rate, 2);
  }
  return s;
}

// First 50% crossing by linear interpolation. Empty if the curve starts at
// or above 50% (no transition on the grid) or never reaches it.
std::optional<double> crossing(const std::vector<double>& x, const std::vector<double>& rate) {
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (rate[i] >= 0.5) {
      if (i == 0) return std::nullopt;
      const double t = (0.5 - rate[i - 1]) / (rate[i] - rate[i - 1]);
      return x[i - 1] + t * (x[i] - x[i - 1]);
    }
  }
  return std::nullopt;
}

std::vector<double> column(const SweepResult& res, bool rescaled) {
  std::vector<double> out;
  for (const auto& r : res.records) out.push_back(rescaled ? r.rescaled_value : r.value);
  return out;
}

std::vector<double> rates(const SweepResult& res) {
  std::vector<double> out;
  for (const auto& r : res.records) out.push_back(r.success_rate);
  return out;
}

ExperimentTemplate noisy_template(Index r, double sigma_n, Index trials, std::uint64_t seed) {
  ExperimentTemplate t;
  t.algorithm = Algorithm::RacosN;
  t.problem.n1 = 100;
  t.problem.n2 = 400;
  t.problem.r = r;
  t.problem.k = 80;
  t.problem.noise = GaussianNoise{sigma_n};
  t.racos_n.gamma = 0.2;
  t.racos_n.m = 30;
  t.racos_n.q = 20;
  t.racos_n.lambda = FixedLambda{0.4};
  t.racos_n.alpha = EnergyFraction{0.99};
  t.epsilon1_from_noise = true;
  t.trials = trials;
  t.base_seed = seed;
  return t;
}

Verdict noise_threshold() {
  const std::vector<double> ratios = {0.1, 0.25, 0.5, 0.75, 1.0, 1.5, 2.0, 3.0, 4.0, 5.0};
  std::vector<SweepResult> curves;
  std::vector<std::optional<double>> raw_cross, resc_cross;
  bool high_ok = true;
  for (double sigma_n : {0.1, 0.5}) {
    SweepConfig cfg;
    cfg.base = noisy_template(5, sigma_n, 30, 101);
    cfg.base.success_rule = SuccessRule::Separation;
    cfg.param = "sigma_r";
    cfg.rescale = "sigma_r";
    const double nominal = std::sqrt(0.2) * 400.0 * sigma_n * std::sqrt(100.0);
    for (double q : ratios) cfg.values.push_back(q * nominal);
    const SweepResult res = run_sweep(cfg);
    raw_cross.push_back(crossing(column(res, false), rates(res)));
    resc_cross.push_back(crossing(column(res, true), rates(res)));
    for (const auto& r : res.records)
      if (r.rescaled_value >= 3.0 && r.success_rate < 0.95) high_ok = false;
    curves.push_back(res);
  }
  bool pass = high_ok;
  std::string why;
  for (std::size_t i = 0; i < 2; ++i) {
    if (!resc_cross[i]) {
      pass = false;
      why += " no 50% crossing for sigma_N=" + std::string(i == 0 ? "0.1" : "0.5") + ";";
    } else if (*resc_cross[i] < 0.5 || *resc_cross[i] > 2.0) {
      pass = false;
      why += " crossing " + num(*resc_cross[i]) + " outside [0.5, 2];";
    }
  }
  if (raw_cross[0] && raw_cross[1]) {
    if (*raw_cross[1] / *raw_cross[0] < 2.0) {
      pass = false;
      why += " raw shift " + num(*raw_cross[1] / *raw_cross[0]) + " < 2;";
    }
  } else {
    pass = false;
    why += " raw shift undefined;";
  }
  if (!high_ok) why += " rate < 0.95 at ratio >= 3;";
  return {pass, "sigma_N=0.1 [" + curve(curves[0]) + "] sigma_N=0.5 [" + curve(curves[1]) + "]" + why};
}

Verdict gamma_threshold() {
  const std::vector<double> gammas = {0.005, 0.01, 0.02, 0.03, 0.04, 0.06, 0.08, 0.1, 0.15, 0.2, 0.3};
  std::vector<double> cross;
  std::string detail;
  bool pass = true;
  for (Index r : {3, 6}) {
    SweepConfig cfg;
    cfg.base = noisy_template(r, 0.01, 25, 202);
    cfg.param = "gamma";
    cfg.rescale = "gamma";
    cfg.values = gammas;
    const SweepResult res = run_sweep(cfg);
    const auto c = crossing(column(res, true), rates(res));
    detail += "r=" + std::to_string(r) + " [" + curve(res) + "] crossing=" + (c ? num(*c) : "none") + " ";
    if (!c || *c < 0.5 || *c > 3.0) pass = false;
    if (c) cross.push_back(*c);
  }
  if (cross.size() == 2) {
    const double ratio = std::max(cross[0], cross[1]) / std::min(cross[0], cross[1]);
    detail += "agreement=" + num(ratio);
    if (ratio > 2.0) pass = false;
  }
  return {pass, detail};
}

Verdict m_threshold() {
  const std::vector<double> ms = {4, 6, 8, 10, 12, 15, 20, 25, 30, 40};
  std::string detail;
  bool pass = true;
  for (Index r : {3, 6}) {
    SweepConfig cfg;
    cfg.base = noisy_template(r, 0.01, 20, 303);
    cfg.param = "m";
    cfg.rescale = "m_log_n2";
    cfg.values = ms;
    const SweepResult res = run_sweep(cfg);
    detail += "r=" + std::to_string(r) + " [" + curve(res) + "] ";
    bool any = false;
    for (const auto& rec : res.records) {
      if (rec.rescaled_value >= 2.0) {
        any = true;
        if (rec.success_rate < 0.9) pass = false;
      }
    }
    if (!any) pass = false;
  }
  return {pass, detail};
}

SweepResult racos_i_run(double p, bool trim, Index trials, std::uint64_t seed) {
  SweepConfig cfg;
  cfg.base.algorithm = Algorithm::RacosI;
  cfg.base.problem.n1 = 100;
  cfg.base.problem.n2 = 400;
  cfg.base.problem.r = 5;
  cfg.base.problem.k = 80;
  cfg.base.racos_i.gamma1 = 0.5;
  cfg.base.racos_i.gamma2 = 0.3;
  cfg.base.racos_i.lambda = FixedLambda{0.4};
  if (trim) cfg.base.racos_i.trim_rho = 0.9;
  cfg.base.trials = trials;
  cfg.base.base_seed = seed;
  cfg.param = "p";
  cfg.values = {p};
  return run_sweep(cfg);
}

Verdict incomplete_recovery() {
  const SweepResult a = racos_i_run(0.6, true, 30, 404);
  const SweepResult b = racos_i_run(1.0, false, 30, 405);
  const double ra = a.records[0].success_rate;
  const double rb = b.records[0].success_rate;
  return {ra >= 0.9 && rb == 1.0,
          "p=0.6 trimmed exact rate " + num(ra) + " (need >= 0.9); p=1 untrimmed " + num(rb) +
              " (need 1)"};
}

Verdict timing() {
  setenv("RACOS_THREADS", "1", 1);
  PhaseConfig n;
  n.base.algorithm = Algorithm::RacosN;
  n.base.problem.n1 = 200;
  n.base.problem.n2 = 500;
  n.base.problem.r = 5;
  n.base.problem.k = 100;
  n.base.problem.noise = GaussianNoise{0.01};
  n.base.epsilon1_from_noise = true;
  n.base.racos_n.lambda = FixedLambda{0.4};
  n.base.trials = 10;
  n.base.base_seed = 505;
  n.param1 = "m_ratio";
  n.values1 = {0.2};
  n.param2 = "gamma";
  n.values2 = {0.2};
  const PhaseResult rn = run_phase(n);

  PhaseConfig i;
  i.base.algorithm = Algorithm::RacosI;
  i.base.problem.n1 = 200;
  i.base.problem.n2 = 500;
  i.base.problem.r = 5;
  i.base.problem.k = 100;
  i.base.problem.p = 0.4;
  i.base.racos_i.lambda = FixedLambda{0.4};
  i.base.trials = 10;
  i.base.base_seed = 506;
  i.param1 = "gamma1";
  i.values1 = {0.3};
  i.param2 = "gamma2";
  i.values2 = {0.3};
  const PhaseResult ri = run_phase(i);

  const double sn = rn.cells[0].speedup;
  const double si = ri.cells[0].speedup;
  return {sn >= 3.0 && si >= 3.0,
          "RACOS-N " + num(rn.cells[0].mean_runtime_ms) + " ms vs full " + num(rn.full_runtime_ms) +
              " ms, speedup " + num(sn) + "; RACOS-I (p=0.4) " + num(ri.cells[0].mean_runtime_ms) +
              " ms vs full " + num(ri.full_runtime_ms) + " ms, speedup " + num(si) + " (need >= 3)"};
}

Verdict solver_oracle() {
  std::string detail;
  bool pass = true;
  auto check = [&](const char* name, const DecompositionResult& admm,
                   const testing::ReferenceSolution& ref, Index outlier) {
    const double rel = std::abs(admm.objective - ref.objective) / ref.objective;
    const double gap = (admm.objective - ref.lower_bound) / ref.lower_bound;
    const auto supp = testing::support(admm.c_hat);
    const bool exact = supp == std::vector<Index>{outlier};
    detail += std::string(name) + ": rel diff " + num(rel) + ", certified gap " + num(gap) +
              ", support " + (exact ? "exact" : "wrong") + "; ";
    if (!(rel <= 1e-4 && std::abs(gap) <= 1e-4 && exact)) pass = false;
  };

  std::mt19937_64 rng(3);
  const Matrix y = testing::orthogonal_outlier_instance(10, 20, rng);
  check("OP 10x20", outlier_pursuit_noisy(y, 0.8, 0.0, {}),
        testing::reference_outlier_pursuit(y, 0.8, 20000), 19);

  const Matrix z = testing::orthogonal_outlier_instance(12, 24, rng);
  const MaskedMatrix mz = apply_mask(z, sample_mask(12, 24, 0.7, RngSeed{3, 1}));
  check("MP 12x24 p=0.7", manipulator_pursuit(mz, 0.8, {}),
        testing::reference_manipulator_pursuit(mz, 0.8, 40000), 23);
  return {pass, detail};
}

Verdict properties() {
  std::vector<std::string> failed;
  std::mt19937_64 rng(707);
  std::uniform_int_distribution<Index> dim(2, 20);

  // Singular values move by at most the spectral norm of the perturbation.
  for (int t = 0; t < 200; ++t) {
    const Index a = dim(rng), b = dim(rng);
    const Matrix m = testing::gaussian(a, b, rng);
    const Matrix e = testing::gaussian(a, b, rng, std::pow(10.0, -3.0 + 3.0 * (t % 4) / 3.0));
    const Vector s0 = Eigen::JacobiSVD<Matrix>(m).singularValues();
    const Vector s1 = Eigen::JacobiSVD<Matrix>(Matrix(m + e)).singularValues();
    const double bound = norms(e).spectral;
    if ((s1 - s0).cwiseAbs().maxCoeff() > bound + 1e-10) {
      failed.push_back("weyl");
      break;
    }
  }

  // Projector perturbation under a rank-preserving change of factors.
  for (int t = 0; t < 100; ++t) {
    const Index n1 = dim(rng) + 2, n2 = dim(rng) + 2;
    const Index r = 1 + static_cast<Index>(rng() % static_cast<std::uint64_t>(std::min(n1, n2) - 1));
    const Matrix x = testing::gaussian(n1, r, rng), yv = testing::gaussian(n2, r, rng);
    const double eps = std::pow(10.0, -3.0 + 2.5 * (t % 5) / 4.0);
    const Matrix a = x * yv.transpose();
    const Matrix at = (x + testing::gaussian(n1, r, rng, eps)) * (yv + testing::gaussian(n2, r, rng, eps)).transpose();
    const Matrix e = at - a;
    Eigen::JacobiSVD<Matrix> sa(a, Eigen::ComputeFullU | Eigen::ComputeFullV);
    Eigen::JacobiSVD<Matrix> st(at, Eigen::ComputeFullU | Eigen::ComputeFullV);
    const Matrix u1 = sa.matrixU().leftCols(r), u2 = sa.matrixU().rightCols(n1 - r);
    const Matrix v1 = sa.matrixV().leftCols(r);
    const Matrix ut1 = st.matrixU().leftCols(r);
    const double pinv_a = 1.0 / sa.singularValues()(r - 1);
    const double pinv_at = 1.0 / st.singularValues()(r - 1);
    const double bound = std::min({1.0, pinv_a * testing::jacobi_spectral(e * v1),
                                   pinv_at * testing::jacobi_spectral(u2.transpose() * e)});
    const Matrix pa = column_space_basis(a), pt = column_space_basis(at);
    const double lhs =
        testing::jacobi_spectral(Matrix(pt * pt.transpose() - pa * pa.transpose()));
    if (pa.cols() != r || pt.cols() != r || lhs > bound + 1e-8 ||
        (ut1 * ut1.transpose() - pt * pt.transpose()).norm() > 1e-8) {
      failed.push_back("projection");
      break;
    }
  }

  // Distributional JL tail at m = 100, eps = 0.25.
  {
    const Index m = 100, n = 50, trials = 4000;
    Vector x = testing::gaussian(n, 1, rng).col(0);
    x.normalize();
    Index exceed = 0;
    for (Index t = 0; t < trials; ++t) {
      const Matrix phi = gaussian_jl(m, n, RngSeed{717, static_cast<std::uint64_t>(t)});
      if (std::abs((phi * x).squaredNorm() - 1.0) > 0.25) ++exceed;
    }
    const double ph = static_cast<double>(exceed) / trials;
    const double se = std::sqrt(std::max(ph * (1.0 - ph), 1.0 / trials) / trials);
    const double bound = 2.0 * std::exp(-static_cast<double>(m) * jl_tail_constant(0.25));
    if (ph > bound + 3.0 * se) failed.push_back("jl-tail");
  }

  // Subgradient optimality of both proximal maps.
  for (int t = 0; t < 50; ++t) {
    const Index a = dim(rng), b = dim(rng);
    const Matrix m = testing::gaussian(a, b, rng);
    const double tau = 0.5 + (t % 5);
    const Matrix xn = prox_nuclear(m, tau);
    const Matrix g = (m - xn) / tau;
    Eigen::JacobiSVD<Matrix> sx(xn, Eigen::ComputeThinU | Eigen::ComputeThinV);
    Index k = 0;
    while (k < sx.singularValues().size() && sx.singularValues()(k) > 1e-9) ++k;
    const Matrix u = sx.matrixU().leftCols(k), v = sx.matrixV().leftCols(k);
    const Matrix w = g - u * v.transpose();
    bool ok = testing::jacobi_spectral(w) <= 1.0 + 1e-8;
    if (k > 0) ok = ok && (u.transpose() * w).cwiseAbs().maxCoeff() <= 1e-8 &&
                    (w * v).cwiseAbs().maxCoeff() <= 1e-8;
    const Matrix xc = prox_l12(m, tau);
    for (Index j = 0; j < b; ++j) {
      const double nx = xc.col(j).norm();
      const Vector gj = (m.col(j) - xc.col(j)) / tau;
      if (nx > 0.0) {
        ok = ok && (gj - xc.col(j) / nx).cwiseAbs().maxCoeff() <= 1e-8;
      } else {
        ok = ok && gj.norm() <= 1.0 + 1e-8;
      }
    }
    if (!ok) {
      failed.push_back("prox-optimality");
      break;
    }
  }

  // Detection is unchanged when the sketch is rescaled.
  for (std::uint64_t t = 0; t < 5; ++t) {
    ProblemSpec spec;
    spec.n1 = 100;
    spec.n2 = 400;
    spec.r = 5;
    spec.k = 80;
    spec.noise = GaussianNoise{0.01};
    const SyntheticProblem prob = generate(spec, RngSeed{727, t});
    RacosNParams params;
    params.seed = RngSeed{728, t};
    const RacosNOperators ops = draw_racos_n_operators(100, 400, params);
    std::optional<ColumnSet> first;
    bool same = true;
    for (double s : {0.1, 1.0, 10.0}) {
      RacosNOperators scaled = ops;
      scaled.phi *= s;
      const OutlierReport rep = racos_n(prob.observed(), scaled, params);
      if (!first) {
        first = rep.estimated_outliers;
      } else if (!(rep.estimated_outliers == *first)) {
        same = false;
      }
    }
    if (!same) {
      failed.push_back("scale-invariance");
      break;
    }
  }

  // Measurement accounting.
  Index checked_n = 0, checked_i = 0;
  for (std::uint64_t t = 0; t < 40; ++t) {
    ProblemSpec spec;
    spec.n1 = 100;
    spec.n2 = 400;
    spec.r = 5;
    spec.k = 80;
    const SyntheticProblem prob = generate(spec, RngSeed{737, t});
    RacosNParams params;
    params.seed = RngSeed{738, t};
    const OutlierReport rep = racos_n(prob.observed(), params);
    const double g = params.gamma;
    if (rep.sampled_columns.size() <= 1.5 * g * 400) {
      ++checked_n;
      if (rep.measurement_count > (1.5 * g * params.m + params.q) * 400) failed.push_back("count-noisy");
    }
  }
  for (std::uint64_t t = 0; t < 20; ++t) {
    ProblemSpec spec;
    spec.n1 = 60;
    spec.n2 = 200;
    spec.r = 3;
    spec.k = 40;
    spec.p = 0.6;
    const SyntheticProblem prob = generate(spec, RngSeed{747, t});
    RacosIParams params;
    params.seed = RngSeed{748, t};
    const OutlierReport rep = racos_i(prob.masked(), params);
    ++checked_i;
    if (rep.measurement_count > 1.5 * 0.6 * params.gamma1 * 60 * 200) failed.push_back("count-incomplete");
  }
  if (checked_n == 0 || checked_i == 0) failed.push_back("count-vacuous");

  std::string detail = "weyl, projection, jl-tail, prox, scale-invariance, measurement counts";
  if (!failed.empty()) {
    detail = "failed:";
    for (const auto& f : failed) detail += " " + f;
  }
  return {failed.empty(), detail};
}

Verdict calculators() {
  // Frozen values computed independently at 40 significant digits.
  TheoryInputs a;
  a.n1 = 100; a.n2 = 1000; a.n_l = 800; a.r = 5; a.mu_u = 1.5; a.mu_v = 1.2; a.kappa = 2;
  a.delta = 0.1; a.p = 0.6; a.gamma = 0.2; a.tau1 = 0.5; a.eta_n = 1.0; a.sigma = 0.1;
  a.phi = 1.5; a.beta = 2; a.c_p = 1; a.c_k = 1; a.c_gamma2 = 1;
  TheoryInputs b;
  b.n1 = 2000; b.n2 = 5000; b.n_l = 4000; b.r = 3; b.mu_u = 2; b.mu_v = 1.1; b.mu_l = 2.5;
  b.kappa = 3; b.delta = 0.05; b.p = 0.8; b.gamma = 0.3; b.tau1 = 0.3; b.eta_n = 0.7;
  b.sigma = 0.05; b.phi = 0.9; b.beta = 1.5; b.c_p = 0.01; b.c_k = 2; b.c_gamma2 = 3;

  struct Point {
    const TheoryInputs* in;
    Index n2_sub, k;
    double gamma2;
    std::map<std::string, double> expect;
  };
  const std::vector<Point> points = {
      {&a, 200, 200, 0.3,
       {{"k_upper_noisy", 0.054244643341470031842},
        {"gamma_lower_noisy", 15095.848400912884462},
        {"m_lower", 3117.8215475017784294},
        {"q_lower", 3042.3513761390985185},
        {"tau2_lower", 788760.98280743922527},
        {"sigma_r_lower", 113841.99576606165911},
        {"alpha_generic_lo", 3600.0000000000001998},
        {"alpha_generic_hi", 10800.0000000000006},
        {"c1", 3.3151084676368583434},
        {"c2", 13.748092807651627173},
        {"alpha_gauss_lo", 1193.4390483492691361},
        {"alpha_gauss_hi", 14847.940232263758995},
        {"p_lower_untrimmed", 295.72593170747170833},
        {"k_upper_untrimmed", 1.0103635007042429329e-7},
        {"p_lower_trimmed", 7.2217147749341096237},
        {"k_upper_trimmed", 0.028136354692711744109},
        {"gamma1_untrimmed", 79846.001561017364204},
        {"gamma2_untrimmed", 8907308443.3351175101},
        {"gamma1_trimmed", 1949.8629892322096706},
        {"gamma2_trimmed", 31985.733187361801726},
        {"lambda_op", 1.1877886330213359241},
        {"lambda_mp_untrimmed", 0.000020225751894686236171},
        {"lambda_mp_trimmed", 0.001713379020293935333}}},
      {&b, 1500, 1000, 0.25,
       {{"k_upper_noisy", 0.4930674713527798746},
        {"gamma_lower_noisy", 1941.9215506742247586},
        {"m_lower", 2526.6600826437211379},
        {"q_lower", 3749.7055167068693527},
        {"tau2_lower", 9056129.058874148438},
        {"sigma_r_lower", 813326.50270355750934},
        {"alpha_generic_lo", 18899.999999999998102},
        {"alpha_generic_hi", 56699.999999999994305},
        {"c1", 39.472466539266975739},
        {"c2", 49.415831322628267402},
        {"alpha_gauss_lo", 53287.829828010418234},
        {"alpha_gauss_hi", 200134.11685664448668},
        {"p_lower_untrimmed", 0.25513198218473417138},
        {"k_upper_untrimmed", 6.0472256598960663694e-7},
        {"p_lower_trimmed", 0.006715737606605970866},
        {"k_upper_trimmed", 0.19361418116321112056},
        {"gamma1_untrimmed", 51.664226392408666836},
        {"gamma2_untrimmed", 1717467527.408084731},
        {"gamma1_trimmed", 1.3599368653377090249},
        {"gamma2_trimmed", 5364.231916992380646},
        {"lambda_op", 0.32167609517040839789},
        {"lambda_mp_untrimmed", 8.6473938462916646809e-6},
        {"lambda_mp_trimmed", 0.0011335643142622957649}}}};

  double worst = 0.0;
  std::string worst_name;
  Index compared = 0;
  for (const auto& pt : points) {
    const TheoryInputs& in = *pt.in;
    MpLambdaInputs mp;
    mp.p = in.p;
    mp.k = pt.k;
    mp.r = static_cast<Index>(in.r);
    mp.mu_l = in.effective_mu_l();
    mp.n_l_sub = pt.gamma2 * in.n_l;
    mp.n1 = static_cast<Index>(in.n1);
    mp.phi = in.phi;
    MpLambdaInputs mpt = mp;
    mpt.trimmed = true;
    const std::map<std::string, double> got = {
        {"k_upper_noisy", k_upper_noisy(in)},
        {"gamma_lower_noisy", gamma_lower_noisy(in)},
        {"m_lower", m_lower(in)},
        {"q_lower", q_lower(in)},
        {"tau2_lower", tau2_lower(in)},
        {"sigma_r_lower", sigma_r_lower(in)},
        {"alpha_generic_lo", alpha_window_generic(in).lo},
        {"alpha_generic_hi", alpha_window_generic(in).hi},
        {"c1", gaussian_window_c1(in)},
        {"c2", gaussian_window_c2(in)},
        {"alpha_gauss_lo", alpha_window_gaussian(in).lo},
        {"alpha_gauss_hi", alpha_window_gaussian(in).hi},
        {"p_lower_untrimmed", p_lower_untrimmed(in)},
        {"k_upper_untrimmed", k_upper_untrimmed(in)},
        {"p_lower_trimmed", p_lower_trimmed(in)},
        {"k_upper_trimmed", k_upper_trimmed(in)},
        {"gamma1_untrimmed", gamma1_lower(in, false)},
        {"gamma2_untrimmed", gamma2_lower(in, false)},
        {"gamma1_trimmed", gamma1_lower(in, true)},
        {"gamma2_trimmed", gamma2_lower(in, true)},
        {"lambda_op", lambda_op_theory(pt.n2_sub, static_cast<Index>(in.r), in.mu_v)},
        {"lambda_mp_untrimmed", lambda_mp_theory(mp)},
        {"lambda_mp_trimmed", lambda_mp_theory(mpt)}};
    for (const auto& [name, want] : pt.expect) {
      const double rel = std::abs(got.at(name) - want) / std::abs(want);
      ++compared;
      if (rel > worst) {
        worst = rel;
        worst_name = name;
      }
    }
  }
  return {worst <= 1e-12, std::to_string(compared) + " values, worst relative error " +
                              num(worst) + (worst_name.empty() ? "" : " (" + worst_name + ")")};
}

struct Criterion {
  int id;
  const char* name;
  std::function<Verdict()> run;
};

}  // namespace

int main(int argc, char** argv) {
  std::optional<int> only;
  for (int i = 1; i < argc; ++i) {
    if (std::string(argv[i]) == "--only" && i + 1 < argc) only = std::atoi(argv[++i]);
  }
  const std::vector<Criterion> criteria = {
      {1, "noise-threshold alignment", noise_threshold},
      {2, "gamma-threshold alignment", gamma_threshold},
      {3, "m-threshold", m_threshold},
      {4, "incomplete-observation recovery", incomplete_recovery},
      {5, "timing speedup", timing},
      {6, "solver oracle equivalence", solver_oracle},
      {7, "property suites", properties},
      {8, "parameter-calculator regression", calculators},
  };
  bool all = true;
  for (const auto& c : criteria) {
    if (only && *only != c.id) continue;
    Verdict v;
    try {
      v = c.run();
    } catch (const std::exception& e) {
      v = {false, std::string("exception: ") + e.what()};
    }
    std::printf("[%s] criterion %d %s: %s\n", v.pass ? "PASS" : "FAIL", c.id, c.name, v.detail.c_str());
    std::fflush(stdout);
    all = all && v.pass;
  }
  return all ? 0 : 1;
}
