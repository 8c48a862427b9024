// Copyright 2026 The hybridsim Authors
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

#include <benchmark/benchmark.h>

#include <random>
#include <string>

#include "hybridsim/device_model.hpp"
#include "hybridsim/ensemble_select.hpp"
#include "hybridsim/scheduler.hpp"

namespace hybridsim {
namespace {

std::vector<Component> random_components(int n) {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> t(0.01, 2.0), v(0.0, 10.0);
  std::vector<Component> out;
  for (int i = 0; i < n; ++i) out.push_back({"c" + std::to_string(100 + i), t(rng), v(rng)});
  return out;
}

void BM_SelectAdditive(benchmark::State& state) {
  const auto comps = random_components(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(select_additive(comps, 5.0));
}
BENCHMARK(BM_SelectAdditive)->Arg(15)->Arg(60);

void BM_SelectGeneral(benchmark::State& state) {
  const auto comps = random_components(static_cast<int>(state.range(0)));
  const SearchMode mode = state.range(1) ? SearchMode::kBranchAndBound : SearchMode::kExhaustive;
  const SetFunction f = noisy_or_objective();
  std::vector<Component> probs = comps;
  for (auto& c : probs) c.value /= 10.0;
  for (auto _ : state) benchmark::DoNotOptimize(select_general(probs, f, 5.0, mode));
}
BENCHMARK(BM_SelectGeneral)->Args({15, 0})->Args({15, 1})->Args({20, 1});

std::vector<Job> random_jobs(int n) {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> gflop(1.0, 2000.0), arrival(0.0, 60.0);
  std::uniform_int_distribution<std::uint64_t> bytes(0, 100'000'000);
  std::vector<Job> jobs;
  for (int j = 0; j < n; ++j) {
    std::vector<PipelineStage> p;
    for (int s = 0; s < 8; ++s) {
      PipelineStage st{"s" + std::to_string(s), gflop(rng), bytes(rng), bytes(rng), {}};
      if (s % 3 == 0) st.affinity = {{DeviceKind::kGpgpu, 8.0}, {DeviceKind::kMic, 4.0}};
      p.push_back(st);
    }
    jobs.push_back({"job" + std::to_string(j), p, arrival(rng)});
  }
  return jobs;
}

void BM_Simulate(benchmark::State& state) {
  const ClusterConfig cluster = default_cluster(4, 4);
  const auto jobs = random_jobs(static_cast<int>(state.range(0)));
  SimulationOptions options;
  options.placement = state.range(1) ? PlacementMode::kExact : PlacementMode::kGreedy;
  for (auto _ : state) benchmark::DoNotOptimize(simulate(cluster, jobs, options).makespan_us);
}
BENCHMARK(BM_Simulate)->Args({100, 0})->Args({1000, 0})->Args({100, 1});

}  // namespace
}  // namespace hybridsim

BENCHMARK_MAIN();
