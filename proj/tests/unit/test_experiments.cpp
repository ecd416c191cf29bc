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

#include "racos/experiments.hpp"
#include "racos/error.hpp"

#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

using namespace racos;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / "racos_unit_experiments";
  fs::create_directories(dir);
  return dir / name;
}

std::string slurp(const fs::path& path) {
  std::ifstream in(path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

SweepConfig small_sweep() {
  SweepConfig c;
  c.base.problem.n1 = 30;
  c.base.problem.n2 = 80;
  c.base.problem.r = 2;
  c.base.problem.k = 10;
  c.base.problem.noise = GaussianNoise{0.01};
  c.base.racos_n.m = 15;
  c.base.racos_n.q = 10;
  c.base.trials = 4;
  c.base.base_seed = 77;
  c.param = "gamma";
  c.values = {0.2, 0.5};
  c.rescale = "gamma";
  return c;
}

}  // namespace

TEST_CASE("rescale formulas") {
  CHECK(rescale_value("sigma_r", 10.0, {{"gamma", 0.25}, {"n2", 100}, {"eta_n", 0.02}}) ==
        doctest::Approx(10.0));
  CHECK(rescale_value("none", 3.0, {}) == 3.0);
  CHECK(rescale_value("m_log_n2", 20.0, {{"r", 5}, {"n2", 1000}}) ==
        doctest::Approx(20.0 / (6.0 + std::log(1000.0))));
  CHECK(rescale_value("m_log_k", 20.0, {{"r", 5}, {"k", 200}}) ==
        doctest::Approx(20.0 / (6.0 + std::log(200.0))));
  CHECK_THROWS_AS(rescale_value("sigma_r", 1.0, {{"gamma", 0.25}}), Error);
  CHECK_THROWS_AS(rescale_value("gamma", 1.0, {{"r", 1}, {"mu_v", 1}, {"n_l", 10}}), Error);
  CHECK_THROWS_AS(rescale_value("bogus", 1.0, {}), Error);
}

TEST_CASE("trial seeds are distinct per grid point and trial") {
  CHECK(trial_seed(1, 0, 0) == trial_seed(1, 0, 0));
  CHECK_FALSE(trial_seed(1, 0, 1) == trial_seed(1, 1, 0));
  CHECK_FALSE(trial_seed(1, 0, 0) == trial_seed(2, 0, 0));
}

TEST_CASE("trial errors are recorded as failures") {
  ExperimentTemplate t = small_sweep().base;
  const TrialOutcome out = run_trial(t, {{"gamma", 1e-9}}, RngSeed{1, 0});
  CHECK_FALSE(out.success);
  CHECK(out.error.has_value());
  CHECK(run_trial(t, {{"no_such_param", 1.0}}, RngSeed{1, 0}).error.has_value());
}

TEST_CASE("sweep results do not depend on the worker count") {
  const SweepConfig c = small_sweep();
  setenv("RACOS_THREADS", "1", 1);
  const SweepResult serial = run_sweep(c);
  setenv("RACOS_THREADS", "4", 1);
  const SweepResult parallel = run_sweep(c);
  unsetenv("RACOS_THREADS");
  REQUIRE(serial.records.size() == 2);
  for (std::size_t i = 0; i < 2; ++i) {
    CHECK(serial.records[i].successes == parallel.records[i].successes);
    CHECK(serial.records[i].rescaled_value == parallel.records[i].rescaled_value);
    CHECK(serial.records[i].trials == 4);
  }
  CHECK(serial.param == "gamma");
}

TEST_CASE("sweep csv round trip") {
  SweepResult r;
  r.param = "m";
  r.records.push_back({10, 0.5, 20, 15, 0.75, 1.25, 0, {}});
  r.records.push_back({1.0 / 3.0, 2.0, 20, 20, 1.0, 3.5, 0, {}});
  const fs::path path = scratch("sweep.csv");
  write_csv(r, path);
  const std::string text = slurp(path);
  CHECK(text.rfind(std::string(kSweepCsvHeader) + "\n", 0) == 0);
  const SweepResult back = read_sweep_csv(path);
  CHECK(back.param == "m");
  REQUIRE(back.records.size() == 2);
  CHECK(back.records[1].value == 1.0 / 3.0);
  CHECK(back.records[0].successes == 15);
  CHECK(back.records[0].success_rate == 0.75);
  CHECK(back.records[1].mean_runtime_ms == doctest::Approx(3.5));
}

TEST_CASE("empty results write only the header") {
  const fs::path path = scratch("empty.csv");
  write_csv(SweepResult{"gamma", {}}, path);
  CHECK(slurp(path) == std::string(kSweepCsvHeader) + "\n");
  CHECK(read_sweep_csv(path).records.empty());
  const fs::path phase = scratch("empty_phase.csv");
  write_csv(PhaseResult{"m_ratio", "gamma", {}, 0.0}, phase);
  CHECK(slurp(phase) == std::string(kPhaseCsvHeader) + "\n");
}

TEST_CASE("phase csv round trip") {
  PhaseResult r{"m_ratio", "gamma", {}, 10.0};
  r.cells.push_back({0.2, 0.2, 1.0, 2.0, 5.0, 0});
  r.cells.push_back({1.0, 1.0, 1.0, 10.0, 1.0, 0});
  const fs::path path = scratch("phase.csv");
  write_csv(r, path);
  const PhaseResult back = read_phase_csv(path);
  REQUIRE(back.cells.size() == 2);
  CHECK(back.cells[0].value1 == 0.2);
  CHECK(back.cells[0].speedup == 5.0);
}

TEST_CASE("phase runs a full-size cell and reports speedups") {
  PhaseConfig c;
  c.base = small_sweep().base;
  c.base.trials = 2;
  c.values1 = {0.5, 1.0};
  c.values2 = {0.5, 1.0};
  const PhaseResult r = run_phase(c);
  REQUIRE(r.cells.size() == 4);
  CHECK(r.full_runtime_ms > 0.0);
  CHECK(r.cells[3].value1 == 1.0);
  CHECK(r.cells[3].speedup == doctest::Approx(1.0));
  for (const PhaseCell& cell : r.cells) CHECK(cell.speedup > 0.0);
}

TEST_CASE("config parsing") {
  const auto doc = nlohmann::json::parse(R"({
    "algorithm": "racos_n", "trials": 3, "base_seed": 9,
    "problem": {"n1": 20, "n2": 40, "r": 2, "k": 4, "noise": {"kind": "gaussian", "level": 0.01}},
    "params": {"gamma": 0.5, "m": 10, "q": 5, "epsilon1": "auto"},
    "param": "m", "values": [5, 10], "rescale": "m_log_n2"
  })");
  const SweepConfig c = sweep_config_from_json(doc);
  CHECK(c.base.trials == 3);
  CHECK(c.base.base_seed == 9);
  CHECK(c.base.epsilon1_from_noise);
  CHECK(c.values == std::vector<double>{5, 10});
  CHECK(c.rescale == std::optional<std::string>("m_log_n2"));
  auto bad = doc;
  bad["values"] = nlohmann::json::array();
  CHECK_THROWS_AS(sweep_config_from_json(bad).validate(), Error);
}
