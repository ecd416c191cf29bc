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

#include <Eigen/Dense>

#include <cstddef>
#include <utility>
#include <vector>

namespace racos {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;
using Index = Eigen::Index;

/// Tolerance for "has orthonormal columns" preconditions: max |UᵀU − I|.
inline constexpr double kOrthonormalTolerance = 1e-8;

/// Relative floor below which singular values never count toward rank.
inline constexpr double kRankFloor = 1e-12;

/// Compact SVD: u is n1×r, v is n2×r, sigma strictly positive and descending.
struct CompactSvd {
  Matrix u;
  Vector sigma;
  Matrix v;

  Index rank() const noexcept { return sigma.size(); }
  Matrix reconstruct() const;
};

/// Observation set Ω over an n1×n2 grid.
class ObservationMask {
 public:
  ObservationMask() = default;
  ObservationMask(Index rows, Index cols, bool observed = false);

  /// Builds a mask from explicit cells; rejects out-of-range or duplicate
  /// entries.
  static ObservationMask from_cells(Index rows, Index cols,
                                    const std::vector<std::pair<Index, Index>>& cells);

  Index rows() const noexcept { return cells_.rows(); }
  Index cols() const noexcept { return cells_.cols(); }

  bool observed(Index i, Index j) const { return cells_(i, j); }
  void set(Index i, Index j, bool value) { cells_(i, j) = value; }

  Index count() const;
  Index column_count(Index j) const;
  std::vector<Index> observed_rows(Index j) const;

  /// True when every observed cell of `*this` is observed in `other`.
  bool subset_of(const ObservationMask& other) const;

  const Eigen::Array<bool, Eigen::Dynamic, Eigen::Dynamic>& cells() const noexcept {
    return cells_;
  }

  friend bool operator==(const ObservationMask& a, const ObservationMask& b) {
    return a.rows() == b.rows() && a.cols() == b.cols() && (a.cells_ == b.cells_).all();
  }

 private:
  Eigen::Array<bool, Eigen::Dynamic, Eigen::Dynamic> cells_;
};

/// P_Ω(X) together with Ω. Unobserved values are stored as zero.
struct MaskedMatrix {
  Matrix values;
  ObservationMask mask;
};

struct Norms {
  double nuclear = 0.0;
  double spectral = 0.0;
  double l12 = 0.0;
  double linf2 = 0.0;
  double frobenius = 0.0;
};

struct ColumnIncoherence {
  double mu_v = 1.0;
  Index r = 0;
  Index n_l = 0;
};

struct RowIncoherence {
  double mu_u = 1.0;
  Index r = 0;
  Index n1 = 0;
};

void require_finite(const Matrix& m, const char* what);

/// Exact compact SVD. Singular values at or below
/// max(rank_tolerance, 1e-12)·σ₁ are dropped.
CompactSvd compact_svd(const Matrix& m, double rank_tolerance = 0.0);

Norms norms(const Matrix& m);
Vector column_norms(const Matrix& m);

/// Û·D_α(Σ̂)·V̂ᵀ, keeping σᵢ strictly greater than alpha.
Matrix hard_threshold_svd(const CompactSvd& svd, double alpha);

/// Same rule as hard_threshold_svd, returning the truncated factors.
CompactSvd truncate_svd(const CompactSvd& svd, double alpha);

/// Threshold that keeps the shortest descending prefix of singular values
/// whose sum reaches `fraction` of the total. Returns the midpoint between
/// the last kept and first dropped value, or 0 when nothing is dropped.
double alpha_from_energy_fraction(const CompactSvd& svd, double fraction);

/// Throws InvalidInput unless `basis` has orthonormal columns.
void require_orthonormal(const Matrix& basis);

/// (I − UUᵀ)X.
Matrix project_complement(const Matrix& basis_u, const Matrix& x);

/// ‖(I − UUᵀ)m_{:,j}‖₂ for every column j.
std::vector<double> column_residuals(const Matrix& m, const Matrix& basis_u);

/// Orthonormal basis for the column space of m (numerical rank).
Matrix column_space_basis(const Matrix& m, double rank_tolerance = 0.0);

ColumnIncoherence column_incoherence(const Matrix& l, double rank_tolerance = 1e-9);
RowIncoherence row_incoherence(const Matrix& l, double rank_tolerance = 1e-9);

MaskedMatrix apply_mask(const Matrix& m, const ObservationMask& omega);

}  // namespace racos
