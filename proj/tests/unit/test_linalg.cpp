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

#include <doctest.h>

#include <cmath>
#include <random>

using namespace racos;

namespace {

Matrix random_matrix(Index rows, Index cols, unsigned seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> n01;
  Matrix m(rows, cols);
  for (Index j = 0; j < cols; ++j)
    for (Index i = 0; i < rows; ++i) m(i, j) = n01(rng);
  return m;
}

}  // namespace

TEST_CASE("compact_svd of the identity") {
  const CompactSvd svd = compact_svd(Matrix::Identity(4, 4));
  CHECK(svd.rank() == 4);
  for (Index i = 0; i < 4; ++i) CHECK(svd.sigma(i) == doctest::Approx(1.0));
  CHECK((svd.reconstruct() - Matrix::Identity(4, 4)).norm() < 1e-12);
}

TEST_CASE("compact_svd of an outer product has rank one") {
  Vector a(3), b(2);
  a << 1, 2, 2;   // norm 3
  b << 0.6, 0.8;  // norm 1
  const Matrix m = 2.0 * a * b.transpose();
  const CompactSvd svd = compact_svd(m);
  REQUIRE(svd.rank() == 1);
  CHECK(svd.sigma(0) == doctest::Approx(6.0).epsilon(1e-12));
  CHECK((svd.reconstruct() - m).norm() < 1e-12);
}

TEST_CASE("compact_svd factors are orthonormal and sorted") {
  const Matrix m = random_matrix(9, 6, 1);
  const CompactSvd svd = compact_svd(m);
  CHECK(svd.rank() == 6);
  CHECK((svd.u.transpose() * svd.u - Matrix::Identity(6, 6)).cwiseAbs().maxCoeff() < 1e-12);
  CHECK((svd.v.transpose() * svd.v - Matrix::Identity(6, 6)).cwiseAbs().maxCoeff() < 1e-12);
  for (Index i = 1; i < svd.rank(); ++i) CHECK(svd.sigma(i - 1) >= svd.sigma(i));
  CHECK((svd.reconstruct() - m).norm() < 1e-10);
}

TEST_CASE("compact_svd rejects non-finite input") {
  Matrix m = Matrix::Zero(2, 2);
  m(1, 0) = std::nan("");
  CHECK_THROWS_AS(compact_svd(m), Error);
}

TEST_CASE("norms of diag(3, 4)") {
  Matrix m = Matrix::Zero(2, 2);
  m(0, 0) = 3;
  m(1, 1) = 4;
  const Norms n = norms(m);
  CHECK(n.nuclear == doctest::Approx(7.0));
  CHECK(n.spectral == doctest::Approx(4.0));
  CHECK(n.l12 == doctest::Approx(7.0));
  CHECK(n.linf2 == doctest::Approx(4.0));
  CHECK(n.frobenius == doctest::Approx(5.0));
}

TEST_CASE("column norms") {
  Matrix m(2, 3);
  m << 3, 0, 1,
       4, 0, 1;
  const Vector c = column_norms(m);
  CHECK(c(0) == doctest::Approx(5.0));
  CHECK(c(1) == 0.0);
  CHECK(c(2) == doctest::Approx(std::sqrt(2.0)));
}

TEST_CASE("hard threshold keeps values strictly above alpha") {
  CompactSvd svd;
  svd.u = Matrix::Identity(3, 3);
  svd.v = Matrix::Identity(3, 3);
  svd.sigma = Vector(3);
  svd.sigma << 5, 3, 1;
  const Matrix out = hard_threshold_svd(svd, 2.0);
  CHECK(out(0, 0) == doctest::Approx(5.0));
  CHECK(out(1, 1) == doctest::Approx(3.0));
  CHECK(out(2, 2) == 0.0);
  CHECK(truncate_svd(svd, 3.0).rank() == 1);
  CHECK(truncate_svd(svd, 0.0).rank() == 3);
}

TEST_CASE("energy fraction threshold") {
  CompactSvd svd;
  svd.sigma = Vector(2);
  svd.sigma << 100, 1;
  CHECK(alpha_from_energy_fraction(svd, 0.99) == doctest::Approx(50.5));
  svd.sigma = Vector(3);
  svd.sigma << 10, 5, 1;
  CHECK(alpha_from_energy_fraction(svd, 0.99) == 0.0);
}

TEST_CASE("project_complement removes the basis") {
  Matrix u = Matrix::Zero(3, 1);
  u(0, 0) = 1.0;
  Matrix x(3, 2);
  x << 2, 1,
       3, 0,
       4, 5;
  const Matrix p = project_complement(u, x);
  CHECK(p(0, 0) == 0.0);
  CHECK(p(1, 0) == 3.0);
  CHECK(p(2, 1) == 5.0);
  const std::vector<double> res = column_residuals(x, u);
  CHECK(res[0] == doctest::Approx(5.0));
  CHECK(res[1] == doctest::Approx(5.0));
}

TEST_CASE("project_complement rejects a non-orthonormal basis") {
  Matrix u = Matrix::Ones(3, 1);
  CHECK_THROWS_AS(project_complement(u, Matrix::Ones(3, 2)), Error);
}

TEST_CASE("column space basis spans the columns") {
  const Matrix a = random_matrix(8, 2, 2);
  const Matrix m = a * random_matrix(2, 5, 3);
  const Matrix b = column_space_basis(m);
  CHECK(b.cols() == 2);
  CHECK(project_complement(b, m).norm() < 1e-10);
}

TEST_CASE("column incoherence of [a a b] is 1.5") {
  // Columns a, a, b: V rows have squared norms 1/2, 1/2, 1.
  Matrix l(2, 3);
  l << 1, 1, 0,
       0, 0, 1;
  const ColumnIncoherence inc = column_incoherence(l);
  CHECK(inc.r == 2);
  CHECK(inc.n_l == 3);
  CHECK(inc.mu_v == doctest::Approx(1.5));
}

TEST_CASE("row incoherence of e1 e1^T is n1") {
  Matrix l = Matrix::Zero(4, 4);
  l(0, 0) = 1.0;
  const RowIncoherence inc = row_incoherence(l);
  CHECK(inc.r == 1);
  CHECK(inc.mu_u == doctest::Approx(4.0));
}

TEST_CASE("observation mask bookkeeping") {
  ObservationMask mask = ObservationMask::from_cells(3, 2, {{0, 0}, {2, 0}, {1, 1}});
  CHECK(mask.count() == 3);
  CHECK(mask.column_count(0) == 2);
  CHECK(mask.observed_rows(0) == std::vector<Index>{0, 2});
  CHECK(mask.subset_of(ObservationMask(3, 2, true)));
  CHECK_FALSE(ObservationMask(3, 2, true).subset_of(mask));
  CHECK_THROWS_AS(ObservationMask::from_cells(3, 2, {{0, 0}, {0, 0}}), Error);
  CHECK_THROWS_AS(ObservationMask::from_cells(3, 2, {{3, 0}}), Error);

  const MaskedMatrix masked = apply_mask(Matrix::Ones(3, 2), mask);
  CHECK(masked.values.sum() == doctest::Approx(3.0));
  CHECK(masked.mask == mask);
}
