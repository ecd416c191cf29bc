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

#include <cstdint>
#include <random>
#include <string_view>
#include <vector>

namespace racos {

/// (base, stream) fully determines every draw made from it.
struct RngSeed {
  std::uint64_t base = 0;
  std::uint64_t stream = 0;

  /// Independent child stream keyed by a stage label and an index. Used to
  /// give every trial and every algorithm stage its own stream, so results do
  /// not depend on scheduling order.
  RngSeed child(std::string_view label, std::uint64_t index = 0) const;

  std::mt19937_64 engine() const;

  friend bool operator==(const RngSeed&, const RngSeed&) = default;
};

/// Sorted, unique subset of {0, …, n−1}.
class ColumnSet {
 public:
  ColumnSet() = default;
  ColumnSet(Index n, std::vector<Index> indices);

  static ColumnSet all(Index n);
  static ColumnSet range(Index n, Index first, Index last);

  Index ambient() const noexcept { return n_; }
  Index size() const noexcept { return static_cast<Index>(indices_.size()); }
  bool empty() const noexcept { return indices_.empty(); }
  const std::vector<Index>& indices() const noexcept { return indices_; }
  bool contains(Index j) const;
  ColumnSet complement() const;

  friend bool operator==(const ColumnSet&, const ColumnSet&) = default;

 private:
  Index n_ = 0;
  std::vector<Index> indices_;
};

/// m×n matrix with i.i.d. N(0, 1/m) entries, so E‖Φv‖² = ‖v‖².
Matrix gaussian_jl(Index m, Index n, const RngSeed& seed);

/// Each of the n indices kept independently with probability gamma.
ColumnSet bernoulli_select(Index n, double gamma, const RngSeed& seed);

/// I_{S,:} (|S|×n) when as_rows, otherwise I_{:,S} (n×|S|).
Matrix selector_matrix(const ColumnSet& set, bool as_rows);

/// Gathers the listed columns (M·I_{:,S}) without forming the selector.
Matrix gather_columns(const Matrix& m, const ColumnSet& set);
/// Gathers the listed rows (I_{S,:}·M).
Matrix gather_rows(const Matrix& m, const ColumnSet& set);

/// Every cell observed independently with probability p.
ObservationMask sample_mask(Index n1, Index n2, double p, const RngSeed& seed);

/// Per-column trimming: any column with more than ⌈ρm⌉ observed entries keeps
/// a uniformly random subset of ⌈ρm⌉ of them; the rest become unobserved.
MaskedMatrix trim_columns(const MaskedMatrix& y, double rho, Index m, const RngSeed& seed);

/// Trimming cap ⌈ρm⌉.
Index trim_cap(double rho, Index m);

/// Gaussian-ensemble JL exponent f(ε) = ε²/4 − ε³/6.
double jl_tail_constant(double epsilon);

}  // namespace racos
