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

#include "racos/bounds.hpp"
#include "racos/error.hpp"
#include "racos/sampling.hpp"

#include <doctest.h>

#include <cmath>

using namespace racos;

namespace {

TheoryInputs reference_point() {
  TheoryInputs in;
  in.n1 = 100;
  in.n2 = 1000;
  in.n_l = 800;
  in.r = 5;
  in.delta = 0.1;
  in.p = 0.5;
  in.gamma = 0.2;
  in.gamma1 = 0.5;
  in.gamma2 = 0.2;
  in.eta_n = 1.0;
  in.sigma = 0.1;
  in.kappa = 2.0;
  return in;
}

}  // namespace

TEST_CASE("k upper bound for the noisy model") {
  TheoryInputs in;
  in.r = 1;
  in.mu_v = 1;
  in.n2 = 3075;
  CHECK(k_upper_noisy(in) == doctest::Approx(1.0).epsilon(1e-14));
  const double base = k_upper_noisy(in);
  in.r = 2;
  CHECK(k_upper_noisy(in) < base);
  in.r = 1;
  in.mu_v = 2;
  CHECK(k_upper_noisy(in) < base);
  in.r = 1e12;
  CHECK(k_upper_noisy(in) < 1e-9);
}

TEST_CASE("gamma lower bound takes the three-way max") {
  TheoryInputs in;
  in.r = 1;
  in.mu_v = 1;
  in.n2 = 1e6;
  in.n_l = 1e6;
  in.delta = 0.1;
  CHECK(gamma_lower_noisy(in) == doctest::Approx(600.0 * 1025.0 * std::log(60.0) / 1e6));
  // With n_l small the first or third entry wins.
  in.n_l = 10;
  CHECK(gamma_lower_noisy(in) == doctest::Approx(200.0 * std::log(60.0) / 10.0));
  const double at_small_delta = gamma_lower_noisy(in);
  in.delta = 0.5;
  CHECK(gamma_lower_noisy(in) <= at_small_delta);
}

TEST_CASE("measurement bounds") {
  const TheoryInputs in = reference_point();
  const double f = jl_tail_constant(0.25);
  CHECK(m_lower(in) == doctest::Approx((30.0 + std::log(2000.0) + std::log(20.0)) / f));
  CHECK(q_lower(in) == doctest::Approx(4.0 * std::log(20000.0) / f));
}

TEST_CASE("alpha windows") {
  const TheoryInputs in = reference_point();
  const Interval g = alpha_window_generic(in);
  CHECK(g.lo == doctest::Approx(18.0 * 0.2 * 1000.0));
  CHECK(g.hi / g.lo == doctest::Approx(3.0));
  CHECK_FALSE(g.empty());
  const Interval w = alpha_window_gaussian(in);
  CHECK_FALSE(w.empty());
  CHECK(gaussian_window_c1(in) < 3.0 * gaussian_window_c2(in));
  TheoryInputs small = in;
  small.n1 = 8.0 * std::log(2.0 * small.n2 / small.delta);
  CHECK_THROWS_AS(gaussian_window_c1(small), Error);
}

TEST_CASE("tau2 monotonicity") {
  TheoryInputs in = reference_point();
  const double base = tau2_lower(in);
  TheoryInputs k = in;
  k.kappa *= 2;
  CHECK(tau2_lower(k) > base);
  TheoryInputs g = in;
  g.gamma *= 2;
  CHECK(tau2_lower(g) > base);
  TheoryInputs n = in;
  n.n2 *= 2;
  CHECK(tau2_lower(n) > base);
  TheoryInputs t = in;
  t.tau1 = 0.9;
  CHECK(tau2_lower(t) < base);
}

TEST_CASE("incomplete-model bounds are finite and positive at a reference point") {
  const TheoryInputs in = reference_point();
  for (double v : {p_lower_untrimmed(in), k_upper_untrimmed(in), p_lower_trimmed(in),
                   k_upper_trimmed(in), gamma1_lower(in, false), gamma1_lower(in, true),
                   gamma2_lower(in, false), gamma2_lower(in, true), sigma_r_lower(in)}) {
    CHECK(std::isfinite(v));
    CHECK(v > 0.0);
  }
  CHECK(p_lower_untrimmed(in) ==
        doctest::Approx(25.0 * std::pow(std::log(3200.0), 3) / 100.0));
  CHECK(p_lower_trimmed(in) ==
        doctest::Approx(2.0 * 5.0 * std::pow(std::log(2000.0), 2) / 100.0));
  TheoryInputs more_p = in;
  more_p.p = 0.9;
  CHECK(k_upper_untrimmed(more_p) > k_upper_untrimmed(in));
}

TEST_CASE("mu_l defaults to the larger incoherence") {
  TheoryInputs in;
  in.mu_u = 2.0;
  in.mu_v = 3.0;
  CHECK(in.effective_mu_l() == 3.0);
  in.mu_l = 1.5;
  CHECK(in.effective_mu_l() == 1.5);
}

TEST_CASE("calculators are pure and the table reports gaps as null") {
  const TheoryInputs in = reference_point();
  CHECK(m_lower(in) == m_lower(in));
  const auto t1 = bounds_table(in);
  const auto t2 = bounds_table(in);
  CHECK(t1 == t2);
  CHECK(t1["k_upper_noisy"].get<double>() == k_upper_noisy(in));
  TheoryInputs bad = in;
  bad.tau1 = 1.5;
  CHECK(bounds_table(bad)["tau2_lower"].is_null());
}
