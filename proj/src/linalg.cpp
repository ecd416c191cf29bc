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

#include "racos/linalg.hpp"

#include "racos/error.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace racos {

Matrix CompactSvd::reconstruct() const {
  return u * sigma.asDiagonal() * v.transpose();
}

ObservationMask::ObservationMask(Index rows, Index cols, bool observed)
    : cells_(rows, cols) {
  cells_.setConstant(observed);
}

ObservationMask ObservationMask::from_cells(
    Index rows, Index cols, const std::vector<std::pair<Index, Index>>& cells) {
  ObservationMask mask(rows, cols, false);
  for (const auto& [i, j] : cells) {
    require(i >= 0 && i < rows && j >= 0 && j < cols,
            "observation index (" + std::to_string(i) + ", " + std::to_string(j) +
                ") out of range");
    require(!mask.observed(i, j), "duplicate observation index (" + std::to_string(i) +
                                      ", " + std::to_string(j) + ")");
    mask.set(i, j, true);
  }
  return mask;
}

Index ObservationMask::count() const { return cells_.count(); }

Index ObservationMask::column_count(Index j) const { return cells_.col(j).count(); }

std::vector<Index> ObservationMask::observed_rows(Index j) const {
  std::vector<Index> rows;
  for (Index i = 0; i < cells_.rows(); ++i) {
    if (cells_(i, j)) rows.push_back(i);
  }
  return rows;
}

bool ObservationMask::subset_of(const ObservationMask& other) const {
  if (rows() != other.rows() || cols() != other.cols()) return false;
  return !(cells_ && !other.cells_).any();
}

void require_finite(const Matrix& m, const char* what) {
  if (!m.allFinite()) fail(ErrorKind::InvalidInput, std::string(what) + ": non-finite entry");
}

CompactSvd compact_svd(const Matrix& m, double rank_tolerance) {
  require_finite(m, "compact_svd");
  require(rank_tolerance >= 0.0, "compact_svd: rank_tolerance must be nonnegative");
  CompactSvd out;
  if (m.size() == 0) {
    out.u = Matrix(m.rows(), 0);
    out.v = Matrix(m.cols(), 0);
    return out;
  }
  Eigen::BDCSVD<Matrix> svd(m, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const Vector& s = svd.singularValues();
  const double cutoff = std::max(rank_tolerance, kRankFloor) * (s.size() > 0 ? s(0) : 0.0);
  Index r = 0;
  while (r < s.size() && s(r) > cutoff) ++r;
  out.u = svd.matrixU().leftCols(r);
  out.sigma = s.head(r);
  out.v = svd.matrixV().leftCols(r);
  return out;
}

Vector column_norms(const Matrix& m) { return m.colwise().norm().transpose(); }

Norms norms(const Matrix& m) {
  require_finite(m, "norms");
  Norms n;
  if (m.size() == 0) return n;
  const Vector s = Eigen::BDCSVD<Matrix>(m).singularValues();
  const Vector cn = column_norms(m);
  n.nuclear = s.sum();
  n.spectral = s.size() > 0 ? s(0) : 0.0;
  n.l12 = cn.sum();
  n.linf2 = cn.size() > 0 ? cn.maxCoeff() : 0.0;
  n.frobenius = m.norm();
  return n;
}

CompactSvd truncate_svd(const CompactSvd& svd, double alpha) {
  require(alpha >= 0.0, "hard threshold: alpha must be nonnegative");
  Index keep = 0;
  while (keep < svd.sigma.size() && svd.sigma(keep) > alpha) ++keep;
  return CompactSvd{svd.u.leftCols(keep), svd.sigma.head(keep), svd.v.leftCols(keep)};
}

Matrix hard_threshold_svd(const CompactSvd& svd, double alpha) {
  return truncate_svd(svd, alpha).reconstruct();
}

double alpha_from_energy_fraction(const CompactSvd& svd, double fraction) {
  require(fraction > 0.0 && fraction <= 1.0,
          "alpha_from_energy_fraction: fraction must lie in (0, 1]");
  require(svd.sigma.size() > 0, "alpha_from_energy_fraction: empty spectrum");
  const Vector& s = svd.sigma;
  if (fraction == 1.0) return 0.0;
  const double target = fraction * s.sum();
  double running = 0.0;
  for (Index i = 0; i < s.size(); ++i) {
    running += s(i);
    if (running >= target) {
      if (i + 1 == s.size()) return 0.0;
      return 0.5 * (s(i) + s(i + 1));
    }
  }
  return 0.0;
}

void require_orthonormal(const Matrix& basis) {
  require_finite(basis, "basis");
  if (basis.cols() == 0) return;
  const Matrix gram = basis.transpose() * basis;
  const double dev = (gram - Matrix::Identity(basis.cols(), basis.cols())).cwiseAbs().maxCoeff();
  require(dev <= kOrthonormalTolerance,
          "basis columns are not orthonormal (max |UᵀU − I| = " + std::to_string(dev) + ")");
}

Matrix project_complement(const Matrix& basis_u, const Matrix& x) {
  require(basis_u.rows() == x.rows(), "project_complement: dimension mismatch");
  require_orthonormal(basis_u);
  return x - basis_u * (basis_u.transpose() * x);
}

std::vector<double> column_residuals(const Matrix& m, const Matrix& basis_u) {
  require(basis_u.rows() == m.rows(), "column_residuals: dimension mismatch");
  const Vector r = column_norms(project_complement(basis_u, m));
  return {r.data(), r.data() + r.size()};
}

Matrix column_space_basis(const Matrix& m, double rank_tolerance) {
  return compact_svd(m, rank_tolerance).u;
}

namespace {

// Max squared row norm of an orthonormal factor.
double max_leverage(const Matrix& factor) {
  return factor.rowwise().squaredNorm().maxCoeff();
}

}  // namespace

ColumnIncoherence column_incoherence(const Matrix& l, double rank_tolerance) {
  require_finite(l, "column_incoherence");
  const CompactSvd svd = compact_svd(l, rank_tolerance);
  require(svd.rank() > 0, "column_incoherence: zero matrix");
  const Vector cn = column_norms(l);
  const double floor = kRankFloor * cn.maxCoeff();
  const Index n_l = (cn.array() > floor).count();
  const Index r = svd.rank();
  const double upper = static_cast<double>(n_l) / static_cast<double>(r);
  const double mu = upper * max_leverage(svd.v);
  return {std::clamp(mu, 1.0, std::max(1.0, upper)), r, n_l};
}

RowIncoherence row_incoherence(const Matrix& l, double rank_tolerance) {
  require_finite(l, "row_incoherence");
  const CompactSvd svd = compact_svd(l, rank_tolerance);
  require(svd.rank() > 0, "row_incoherence: zero matrix");
  const Index r = svd.rank();
  const double upper = static_cast<double>(l.rows()) / static_cast<double>(r);
  const double mu = upper * max_leverage(svd.u);
  return {std::clamp(mu, 1.0, std::max(1.0, upper)), r, l.rows()};
}

MaskedMatrix apply_mask(const Matrix& m, const ObservationMask& omega) {
  require(m.rows() == omega.rows() && m.cols() == omega.cols(),
          "apply_mask: dimension mismatch");
  Matrix values = omega.cells().select(m.array(), 0.0).matrix();
  return {std::move(values), omega};
}

}  // namespace racos
