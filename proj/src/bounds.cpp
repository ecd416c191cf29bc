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

#include <algorithm>
#include <cmath>
#include <functional>
#include <initializer_list>
#include <string>

namespace racos {

namespace {

void positive(std::initializer_list<double> values, const char* who) {
  for (double v : values) {
    require(std::isfinite(v) && v > 0.0, std::string(who) + ": inputs must be positive");
  }
}

void delta_in_range(double delta, const char* who) {
  require(delta > 0.0 && delta < 1.0, std::string(who) + ": delta must lie in (0, 1)");
}

double max_of(std::initializer_list<double> values) { return std::max(values); }

const double kF = jl_tail_constant(0.25);

}  // namespace

double TheoryInputs::effective_mu_l() const { return mu_l ? *mu_l : std::max(mu_u, mu_v); }

double k_upper_noisy(const TheoryInputs& in) {
  positive({in.r, in.mu_v, in.n2}, "k_upper_noisy");
  return in.n2 / (3.0 * (1.0 + 1024.0 * in.r * in.mu_v));
}

double gamma_lower_noisy(const TheoryInputs& in) {
  positive({in.n_l, in.n2, in.r, in.mu_v}, "gamma_lower_noisy");
  delta_in_range(in.delta, "gamma_lower_noisy");
  const double l6 = std::log(6.0 / in.delta);
  return max_of({200.0 * l6 / in.n_l, 600.0 * (1.0 + 1024.0 * in.r * in.mu_v) * l6 / in.n2,
                 10.0 * in.r * in.mu_v * std::log(6.0 * in.r / in.delta) / in.n_l});
}

double m_lower(const TheoryInputs& in) {
  positive({in.r, in.n2}, "m_lower");
  delta_in_range(in.delta, "m_lower");
  return (5.0 * (in.r + 1.0) + std::log(2.0 * in.n2) + std::log(2.0 / in.delta)) / kF;
}

double q_lower(const TheoryInputs& in) {
  positive({in.n2}, "q_lower");
  delta_in_range(in.delta, "q_lower");
  return 4.0 * std::log(2.0 * in.n2 / in.delta) / kF;
}

double tau2_lower(const TheoryInputs& in) {
  positive({in.beta, in.gamma, in.kappa, in.n2}, "tau2_lower");
  require(in.tau1 > 0.0 && in.tau1 < 1.0, "tau2_lower: tau1 must lie in (0, 1)");
  const double rhs = 6.0 * (in.beta + 1.0) * (in.tau1 / 4.0 + 1.0) +
                     90.0 * std::sqrt(6.0 * in.gamma) * in.beta * in.kappa * in.n2;
  return rhs / in.tau1;
}

double sigma_r_lower(const TheoryInputs& in) {
  positive({in.gamma, in.n2}, "sigma_r_lower");
  require(in.eta_n >= 0.0, "sigma_r_lower: eta_n must be nonnegative");
  require(in.tau1 > 0.0 && in.tau1 < 1.0, "sigma_r_lower: tau1 must lie in (0, 1)");
  return 90.0 * std::sqrt(2.0 * in.gamma) / in.tau1 * in.n2 * in.eta_n;
}

Interval alpha_window_generic(const TheoryInputs& in) {
  positive({in.gamma, in.n2}, "alpha_window_generic");
  require(in.eta_n >= 0.0, "alpha_window_generic: eta_n must be nonnegative");
  const double base = in.gamma * in.n2 * in.eta_n;
  return {18.0 * base, 54.0 * base};
}

double gaussian_window_c1(const TheoryInputs& in) {
  positive({in.n1, in.n2}, "gaussian_window_c1");
  delta_in_range(in.delta, "gaussian_window_c1");
  const double l = std::log(2.0 * in.n2 / in.delta);
  require(in.n1 > 8.0 * l, "gaussian_window_c1: requires n1 > 8·log(2·n2/delta)");
  return std::sqrt(in.n1 - std::sqrt(8.0 * in.n1 * l));
}

double gaussian_window_c2(const TheoryInputs& in) {
  positive({in.n1, in.n2}, "gaussian_window_c2");
  delta_in_range(in.delta, "gaussian_window_c2");
  const double l = std::log(2.0 * in.n2 / in.delta);
  return std::sqrt(in.n1 + std::sqrt(8.0 * in.n1 * l));
}

Interval alpha_window_gaussian(const TheoryInputs& in) {
  positive({in.gamma, in.n2}, "alpha_window_gaussian");
  require(in.sigma >= 0.0, "alpha_window_gaussian: sigma must be nonnegative");
  const double base = in.gamma * in.sigma * in.n2;
  return {18.0 * gaussian_window_c1(in) * base, 54.0 * gaussian_window_c2(in) * base};
}

double p_lower_untrimmed(const TheoryInputs& in) {
  const double mu = in.effective_mu_l();
  positive({in.c_p, mu, in.r, in.n_l, in.n1}, "p_lower_untrimmed");
  const double lg = std::log(4.0 * in.n_l);
  return in.c_p * mu * mu * in.r * in.r * lg * lg * lg / in.n1;
}

double k_upper_untrimmed(const TheoryInputs& in) {
  const double mu = in.effective_mu_l();
  positive({in.p, in.n2, in.c_k, mu, in.r, in.n1, in.n_l}, "k_upper_untrimmed");
  const double lg = std::log(4.0 * in.n_l);
  const double p2 = in.p * in.p;
  const double factor = 1.0 + 3.0 * std::sqrt(6.0) * mu * in.r / (in.p * std::sqrt(in.n1));
  return (p2 * in.n2 / 3.0) /
         (p2 + in.c_k * factor * std::pow(mu * in.r, 3.0) * std::pow(lg, 6.0));
}

double p_lower_trimmed(const TheoryInputs& in) {
  const double mu = in.effective_mu_l();
  positive({in.c_p, in.phi, mu, in.r, in.n2, in.n1}, "p_lower_trimmed");
  const double lg = std::log(2.0 * in.n2);
  return in.c_p * (1.0 + 1.0 / in.phi) * mu * in.r * lg * lg / in.n1;
}

double k_upper_trimmed(const TheoryInputs& in) {
  const double mu = in.effective_mu_l();
  positive({in.c_k, in.phi, in.p, in.n_l, mu, in.r, in.n2}, "k_upper_trimmed");
  const double lg = std::log(2.0 * in.n2);
  return in.c_k * in.phi / (1.0 + in.phi * std::sqrt(in.phi)) * in.p * in.n_l /
         (std::pow(mu * in.r, 1.5) * lg * lg * lg);
}

double gamma1_lower(const TheoryInputs& in, bool trimmed) {
  positive({in.r, in.mu_u, in.n1, in.p, in.n_l}, "gamma1_lower");
  delta_in_range(in.delta, "gamma1_lower");
  const double p_l = trimmed ? p_lower_trimmed(in) : p_lower_untrimmed(in);
  return max_of({2.0 * in.r * in.mu_u * std::log(2.0 * in.r) / (in.n1 * in.p),
                 8.0 * std::log(4.0 * in.n_l / in.delta) / (in.n1 * in.p),
                 10.0 * in.r * in.mu_u * std::log(4.0 * in.r / in.delta) / in.n1,
                 162.0 * p_l / in.p});
}

double gamma2_lower(const TheoryInputs& in, bool trimmed) {
  positive({in.n_l, in.r, in.mu_v, in.c_gamma2, in.n2}, "gamma2_lower");
  delta_in_range(in.delta, "gamma2_lower");
  const double k_u = trimmed ? k_upper_trimmed(in) : k_upper_untrimmed(in);
  const double l9 = std::log(9.0 / in.delta);
  return max_of({200.0 * l9 / in.n_l, 10.0 * in.r * in.mu_v * std::log(9.0 * in.r / in.delta) / in.n_l,
                 in.c_gamma2 * std::pow(1.0 / in.delta, 0.2) / in.n2, 200.0 * l9 / k_u});
}

nlohmann::json bounds_table(const TheoryInputs& in) {
  nlohmann::json out = nlohmann::json::object();
  auto put = [&](const char* name, const std::function<nlohmann::json()>& fn) {
    try {
      out[name] = fn();
    } catch (const Error&) {
      out[name] = nullptr;
    }
  };
  auto interval = [](Interval i) { return nlohmann::json{{"lo", i.lo}, {"hi", i.hi}}; };
  put("k_upper_noisy", [&] { return k_upper_noisy(in); });
  put("gamma_lower_noisy", [&] { return gamma_lower_noisy(in); });
  put("m_lower", [&] { return m_lower(in); });
  put("q_lower", [&] { return q_lower(in); });
  put("tau2_lower", [&] { return tau2_lower(in); });
  put("sigma_r_lower", [&] { return sigma_r_lower(in); });
  put("alpha_window_generic", [&] { return interval(alpha_window_generic(in)); });
  put("alpha_window_gaussian", [&] { return interval(alpha_window_gaussian(in)); });
  put("p_lower_untrimmed", [&] { return p_lower_untrimmed(in); });
  put("k_upper_untrimmed", [&] { return k_upper_untrimmed(in); });
  put("gamma1_lower_untrimmed", [&] { return gamma1_lower(in, false); });
  put("gamma2_lower_untrimmed", [&] { return gamma2_lower(in, false); });
  put("p_lower_trimmed", [&] { return p_lower_trimmed(in); });
  put("k_upper_trimmed", [&] { return k_upper_trimmed(in); });
  put("gamma1_lower_trimmed", [&] { return gamma1_lower(in, true); });
  put("gamma2_lower_trimmed", [&] { return gamma2_lower(in, true); });
  return out;
}

}  // namespace racos
