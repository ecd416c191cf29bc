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

#include "racos/sampling.hpp"

#include "racos/error.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

namespace racos {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::uint64_t fnv1a(std::string_view s) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

}  // namespace

RngSeed RngSeed::child(std::string_view label, std::uint64_t index) const {
  std::uint64_t h = splitmix64(stream ^ fnv1a(label));
  h = splitmix64(h ^ index);
  return {base, h};
}

std::mt19937_64 RngSeed::engine() const {
  std::seed_seq seq{static_cast<std::uint32_t>(base), static_cast<std::uint32_t>(base >> 32),
                    static_cast<std::uint32_t>(stream),
                    static_cast<std::uint32_t>(stream >> 32)};
  return std::mt19937_64(seq);
}

ColumnSet::ColumnSet(Index n, std::vector<Index> indices) : n_(n), indices_(std::move(indices)) {
  require(n >= 0, "ColumnSet: negative ambient size");
  for (std::size_t i = 0; i < indices_.size(); ++i) {
    require(indices_[i] >= 0 && indices_[i] < n,
            "ColumnSet: index " + std::to_string(indices_[i]) + " out of range [0, " +
                std::to_string(n) + ")");
    require(i == 0 || indices_[i - 1] < indices_[i], "ColumnSet: indices must be sorted and unique");
  }
}

ColumnSet ColumnSet::all(Index n) { return range(n, 0, n); }

ColumnSet ColumnSet::range(Index n, Index first, Index last) {
  std::vector<Index> idx(static_cast<std::size_t>(std::max<Index>(0, last - first)));
  std::iota(idx.begin(), idx.end(), first);
  return ColumnSet(n, std::move(idx));
}

bool ColumnSet::contains(Index j) const {
  return std::binary_search(indices_.begin(), indices_.end(), j);
}

ColumnSet ColumnSet::complement() const {
  std::vector<Index> out;
  out.reserve(static_cast<std::size_t>(n_ - size()));
  auto it = indices_.begin();
  for (Index j = 0; j < n_; ++j) {
    if (it != indices_.end() && *it == j) {
      ++it;
    } else {
      out.push_back(j);
    }
  }
  return ColumnSet(n_, std::move(out));
}

Matrix gaussian_jl(Index m, Index n, const RngSeed& seed) {
  require(m >= 1 && n >= 1, "gaussian_jl: dimensions must be positive");
  auto rng = seed.engine();
  std::normal_distribution<double> normal(0.0, 1.0 / std::sqrt(static_cast<double>(m)));
  Matrix phi(m, n);
  for (Index j = 0; j < n; ++j)
    for (Index i = 0; i < m; ++i) phi(i, j) = normal(rng);
  return phi;
}

ColumnSet bernoulli_select(Index n, double gamma, const RngSeed& seed) {
  require(gamma >= 0.0 && gamma <= 1.0, "bernoulli_select: gamma must lie in [0, 1]");
  auto rng = seed.engine();
  std::bernoulli_distribution coin(gamma);
  std::vector<Index> idx;
  for (Index j = 0; j < n; ++j) {
    if (coin(rng)) idx.push_back(j);
  }
  return ColumnSet(n, std::move(idx));
}

Matrix selector_matrix(const ColumnSet& set, bool as_rows) {
  Matrix sel = Matrix::Zero(set.ambient(), set.size());
  for (Index k = 0; k < set.size(); ++k) sel(set.indices()[static_cast<std::size_t>(k)], k) = 1.0;
  if (as_rows) sel.transposeInPlace();
  return sel;
}

Matrix gather_columns(const Matrix& m, const ColumnSet& set) {
  require(set.ambient() == m.cols(), "gather_columns: ambient size mismatch");
  return m(Eigen::all, set.indices());
}

Matrix gather_rows(const Matrix& m, const ColumnSet& set) {
  require(set.ambient() == m.rows(), "gather_rows: ambient size mismatch");
  return m(set.indices(), Eigen::all);
}

ObservationMask sample_mask(Index n1, Index n2, double p, const RngSeed& seed) {
  require(p > 0.0 && p <= 1.0, "sample_mask: p must lie in (0, 1]");
  ObservationMask mask(n1, n2, false);
  auto rng = seed.engine();
  std::bernoulli_distribution coin(p);
  for (Index j = 0; j < n2; ++j)
    for (Index i = 0; i < n1; ++i) mask.set(i, j, coin(rng));
  return mask;
}

Index trim_cap(double rho, Index m) {
  require(rho > 0.0 && rho <= 1.0, "trim: rho must lie in (0, 1]");
  // Guard against products like 0.9·10 landing a hair above an integer.
  const double raw = rho * static_cast<double>(m);
  return static_cast<Index>(std::ceil(raw - 1e-9 * std::max(1.0, raw)));
}

MaskedMatrix trim_columns(const MaskedMatrix& y, double rho, Index m, const RngSeed& seed) {
  require(y.values.rows() == m, "trim_columns: y must have m rows");
  const Index cap = trim_cap(rho, m);
  require(cap >= 1, "trim_columns: rho·m must be at least 1");
  MaskedMatrix out = y;
  auto rng = seed.engine();
  for (Index j = 0; j < y.values.cols(); ++j) {
    std::vector<Index> rows = y.mask.observed_rows(j);
    if (static_cast<Index>(rows.size()) <= cap) continue;
    // Partial Fisher-Yates: the first `cap` slots become a uniform subset.
    for (Index k = 0; k < cap; ++k) {
      std::uniform_int_distribution<std::size_t> pick(static_cast<std::size_t>(k), rows.size() - 1);
      std::swap(rows[static_cast<std::size_t>(k)], rows[pick(rng)]);
    }
    for (std::size_t k = static_cast<std::size_t>(cap); k < rows.size(); ++k) {
      out.mask.set(rows[k], j, false);
      out.values(rows[k], j) = 0.0;
    }
  }
  return out;
}

double jl_tail_constant(double epsilon) {
  require(epsilon > 0.0 && epsilon < 1.0, "jl_tail_constant: epsilon must lie in (0, 1)");
  return epsilon * epsilon / 4.0 - epsilon * epsilon * epsilon / 6.0;
}

}  // namespace racos
