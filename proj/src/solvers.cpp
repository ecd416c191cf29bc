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

#include "racos/solvers.hpp"

#include "racos/error.hpp"

#include <algorithm>
#include <cmath>
#include <iostream>

namespace racos {

void SolverOptions::validate() const {
  require(max_iters >= 1, "SolverOptions: max_iters must be at least 1");
  require(primal_tolerance > 0.0 && dual_tolerance > 0.0,
          "SolverOptions: tolerances must be positive");
  require(admm_penalty > 0.0, "SolverOptions: admm_penalty must be positive");
}

namespace {

struct NuclearProx {
  Matrix value;
  double nuclear_norm = 0.0;
};

// Singular values and vectors above tau via the eigendecomposition of the
// smaller Gram matrix. Only components above tau are needed, and those are
// well separated from the rounding floor of the squared spectrum.
NuclearProx prox_nuclear_with_norm(const Matrix& m, double tau) {
  const bool wide = m.rows() <= m.cols();
  const Matrix gram = wide ? Matrix(m * m.transpose()) : Matrix(m.transpose() * m);
  Eigen::SelfAdjointEigenSolver<Matrix> eig(gram);
  const Vector& ev = eig.eigenvalues();  // ascending
  const Index n = ev.size();
  const double floor = std::max(tau, 0.0);
  Index keep = 0;
  while (keep < n && std::sqrt(std::max(ev(n - 1 - keep), 0.0)) > floor) ++keep;
  NuclearProx out;
  if (keep == 0) {
    out.value = Matrix::Zero(m.rows(), m.cols());
    return out;
  }
  const Vector sigma = ev.tail(keep).reverse().cwiseMax(0.0).cwiseSqrt();
  const Matrix basis = eig.eigenvectors().rightCols(keep).rowwise().reverse();
  const Vector shrunk = sigma.array() - tau;
  // The other side's vectors are m^T u / sigma (or m v / sigma).
  const Matrix other = (wide ? Matrix(m.transpose() * basis) : Matrix(m * basis)) *
                       sigma.cwiseInverse().asDiagonal();
  out.value = wide ? Matrix(basis * shrunk.asDiagonal() * other.transpose())
                   : Matrix(other * shrunk.asDiagonal() * basis.transpose());
  out.nuclear_norm = shrunk.sum();
  return out;
}

void prox_l12_in_place(Matrix& m, double tau) {
  for (Index j = 0; j < m.cols(); ++j) {
    const double n = m.col(j).norm();
    if (n <= tau) {
      m.col(j).setZero();
    } else {
      m.col(j) *= 1.0 - tau / n;
    }
  }
}

enum class Fidelity { FrobeniusBall, MaskedEquality };

struct Problem {
  const Matrix& y;
  double lambda;
  Fidelity fidelity;
  double epsilon1 = 0.0;
  const ObservationMask* mask = nullptr;
};

// Projection of v onto the feasible set of the slack E.
void project_slack(Matrix& v, const Problem& p) {
  if (p.fidelity == Fidelity::FrobeniusBall) {
    const double n = v.norm();
    if (n > p.epsilon1) v *= (n > 0.0 ? p.epsilon1 / n : 0.0);
  } else {
    v = p.mask->cells().select(0.0, v.array()).matrix();
  }
}

DecompositionResult admm(const Problem& p, const SolverOptions& opts) {
  opts.validate();
  const Matrix& y = p.y;
  DecompositionResult res;
  res.l_hat = Matrix::Zero(y.rows(), y.cols());
  res.c_hat = Matrix::Zero(y.rows(), y.cols());
  const double y_norm = y.norm();
  if (y_norm == 0.0) return res;

  const double spectral = Eigen::BDCSVD<Matrix>(y).singularValues()(0);
  double rho = opts.admm_penalty * 1.25 / spectral;

  Matrix& l = res.l_hat;
  Matrix& c = res.c_hat;
  Matrix e = Matrix::Zero(y.rows(), y.cols());
  Matrix u = Matrix::Zero(y.rows(), y.cols());  // scaled dual
  Matrix c_prev, e_prev, work;
  double nuclear = 0.0;

  res.converged = false;
  for (int it = 1; it <= opts.max_iters; ++it) {
    c_prev = c;
    e_prev = e;

    NuclearProx lp = prox_nuclear_with_norm(y - c - e + u, 1.0 / rho);
    l = std::move(lp.value);
    nuclear = lp.nuclear_norm;

    c = y - l - e + u;
    prox_l12_in_place(c, p.lambda / rho);

    e = y - l - c + u;
    project_slack(e, p);

    work = y - l - c - e;
    u += work;

    const double primal = work.norm() / y_norm;
    const double dual =
        std::sqrt((c - c_prev + e - e_prev).squaredNorm() + (e - e_prev).squaredNorm()) / y_norm;
    res.iterations = it;
    res.final_primal_residual = primal;
    res.final_dual_residual = dual;
    res.merit_history.push_back(primal + dual);

    if (opts.verbose && (it % 100 == 0 || it == 1)) {
      std::cerr << "admm it=" << it << " primal=" << primal << " dual=" << dual
                << " rho=" << rho << '\n';
    }
    if (primal <= opts.primal_tolerance && dual <= opts.dual_tolerance) {
      res.converged = true;
      break;
    }
    if (opts.adaptive_penalty) {
      if (primal > 10.0 * dual) {
        rho *= 2.0;
        u *= 0.5;
      } else if (dual > 10.0 * primal) {
        rho *= 0.5;
        u *= 2.0;
      }
    }
  }
  res.objective = nuclear + p.lambda * column_norms(c).sum();
  return res;
}

}  // namespace

Matrix prox_nuclear(const Matrix& m, double tau) {
  require(tau >= 0.0, "prox_nuclear: tau must be nonnegative");
  require_finite(m, "prox_nuclear");
  if (tau == 0.0 || m.size() == 0) return m;
  return prox_nuclear_with_norm(m, tau).value;
}

Matrix prox_l12(const Matrix& m, double tau) {
  require(tau >= 0.0, "prox_l12: tau must be nonnegative");
  require_finite(m, "prox_l12");
  Matrix out = m;
  prox_l12_in_place(out, tau);
  return out;
}

double decomposition_objective(const Matrix& l, const Matrix& c, double lambda) {
  return norms(l).nuclear + lambda * column_norms(c).sum();
}

DecompositionResult outlier_pursuit_noisy(const Matrix& y, double lambda, double epsilon1,
                                          const SolverOptions& opts) {
  require(lambda > 0.0, "outlier_pursuit_noisy: lambda must be positive");
  require(epsilon1 >= 0.0, "outlier_pursuit_noisy: epsilon1 must be nonnegative");
  require_finite(y, "outlier_pursuit_noisy");
  return admm(Problem{y, lambda, Fidelity::FrobeniusBall, epsilon1, nullptr}, opts);
}

DecompositionResult manipulator_pursuit(const MaskedMatrix& y, double lambda,
                                        const SolverOptions& opts) {
  require(lambda > 0.0, "manipulator_pursuit: lambda must be positive");
  require(y.mask.rows() == y.values.rows() && y.mask.cols() == y.values.cols(),
          "manipulator_pursuit: mask dimension mismatch");
  require(y.mask.count() > 0, "manipulator_pursuit: empty mask");
  require_finite(y.values, "manipulator_pursuit");
  const Matrix observed = y.mask.cells().select(y.values.array(), 0.0).matrix();
  return admm(Problem{observed, lambda, Fidelity::MaskedEquality, 0.0, &y.mask}, opts);
}

double noise_radius(double sigma, Index rows, Index cols) {
  require(sigma >= 0.0, "noise_radius: sigma must be nonnegative");
  return sigma * std::sqrt(static_cast<double>(rows) * static_cast<double>(cols));
}

double lambda_op_theory(Index n2_sub, Index r, double mu_v) {
  require(n2_sub > 0 && r > 0 && mu_v > 0.0, "lambda_op_theory: inputs must be positive");
  return 3.0 * std::sqrt(1.0 + 1024.0 * mu_v * static_cast<double>(r)) /
         (14.0 * std::sqrt(static_cast<double>(n2_sub)));
}

double lambda_mp_theory(const MpLambdaInputs& in) {
  require(in.p > 0.0 && in.k > 0 && in.r > 0 && in.mu_l > 0.0 && in.n_l_sub > 0.0,
          "lambda_mp_theory: inputs must be positive");
  const double k = static_cast<double>(in.k);
  const double r = static_cast<double>(in.r);
  if (!in.trimmed) {
    const double lg = std::log(4.0 * in.n_l_sub);
    return std::sqrt(in.p / (9.0 * k * r * in.mu_l * lg * lg)) / 48.0;
  }
  require(in.phi > 0.0 && in.n1 > 0, "lambda_mp_theory: phi and n1 must be positive");
  const double inner =
      (1.0 + in.phi) * r * in.mu_l * k * std::log(static_cast<double>(in.n1) + in.n_l_sub);
  return std::sqrt(1.0 / std::sqrt(inner)) / 48.0;
}

}  // namespace racos
