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

#include <json.hpp>

#include <optional>

namespace racos {

/// Symbols appearing in the recovery conditions. Only the fields a given
/// calculator reads need to be set.
struct TheoryInputs {
  double n1 = 0.0;
  double n2 = 0.0;
  double n_l = 0.0;
  double r = 0.0;
  double mu_u = 1.0;
  double mu_v = 1.0;
  /// Overrides max(mu_u, mu_v) when set.
  std::optional<double> mu_l;
  double kappa = 1.0;
  double delta = 0.1;
  double p = 1.0;
  double gamma = 0.0;
  double gamma1 = 0.0;
  double gamma2 = 0.0;
  double tau1 = 0.5;
  double eta_n = 0.0;
  double sigma = 0.0;
  double phi = 1.0;
  double beta = 2.0;
  // Unspecified absolute constants.
  double c_p = 1.0;
  double c_k = 1.0;
  double c_gamma2 = 1.0;

  double effective_mu_l() const;
};

struct Interval {
  double lo = 0.0;
  double hi = 0.0;

  bool empty() const noexcept { return !(lo < hi); }
};

// Noisy observations.
double k_upper_noisy(const TheoryInputs& in);
double gamma_lower_noisy(const TheoryInputs& in);
double m_lower(const TheoryInputs& in);
double q_lower(const TheoryInputs& in);
double tau2_lower(const TheoryInputs& in);
double sigma_r_lower(const TheoryInputs& in);
Interval alpha_window_generic(const TheoryInputs& in);
Interval alpha_window_gaussian(const TheoryInputs& in);

/// (n₁ ∓ (8·n₁·log(2n₂/δ))^{1/2})^{1/2}; C₁ requires n₁ > 8·log(2n₂/δ).
double gaussian_window_c1(const TheoryInputs& in);
double gaussian_window_c2(const TheoryInputs& in);

// Incomplete observations, without and with trimming.
double p_lower_untrimmed(const TheoryInputs& in);
double k_upper_untrimmed(const TheoryInputs& in);
double p_lower_trimmed(const TheoryInputs& in);
double k_upper_trimmed(const TheoryInputs& in);
double gamma1_lower(const TheoryInputs& in, bool trimmed);
double gamma2_lower(const TheoryInputs& in, bool trimmed);

/// Every calculator that the given inputs support, keyed by name. Calculators
/// whose inputs are missing or out of range are reported as null.
nlohmann::json bounds_table(const TheoryInputs& in);

}  // namespace racos
