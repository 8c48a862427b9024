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

#include <gtest/gtest.h>

#include <algorithm>
#include <chrono>

#include "hybridsim/errors.hpp"
#include "hybridsim/workload_bridge.hpp"

namespace hybridsim {
namespace {

GrayImage mole() {
  SynthParams p;
  p.n_streaks = 5;
  return synth_mole(p);
}

TEST(Profile, StructureIsDeterministic) {
  const GrayImage img = mole();
  const auto a = profile_pipeline(img, {}, kDefaultHostRateGflops, kMinRepetitions);
  const auto b = profile_pipeline(img, {}, kDefaultHostRateGflops, kMinRepetitions);
  ASSERT_EQ(a.size(), pipeline_stage_names().size());
  ASSERT_EQ(a.size(), b.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    EXPECT_EQ(a[i].name, pipeline_stage_names()[i]);
    EXPECT_EQ(a[i].name, b[i].name);
    EXPECT_EQ(a[i].input_bytes, b[i].input_bytes);
    EXPECT_EQ(a[i].output_bytes, b[i].output_bytes);
    EXPECT_GE(a[i].wall_time_s, 0.0);
    EXPECT_DOUBLE_EQ(a[i].compute_gflop, a[i].wall_time_s * kDefaultHostRateGflops);
  }
}

TEST(Profile, BytesFollowTheRasters) {
  const GrayImage img = mole();
  const auto p = profile_pipeline(img, {}, kDefaultHostRateGflops, kMinRepetitions);
  for (std::size_t i = 1; i < p.size(); ++i) EXPECT_EQ(p[i - 1].output_bytes, p[i].input_bytes);
  EXPECT_EQ(p[0].input_bytes, 4ull * 256 * 256);
  const StreakDetection d = detect_streaks(img);
  const std::uint64_t rotated = real_raster_bytes(d.rotated.width(), d.rotated.height());
  for (const auto& s : p) {
    if (s.name == "gabor" || s.name == "log") {
      EXPECT_EQ(s.input_bytes, rotated);
      EXPECT_EQ(s.output_bytes, rotated);
    }
    if (s.name == "threshold") {
      EXPECT_EQ(s.output_bytes, binary_raster_bytes(d.rotated.width(), d.rotated.height()));
    }
  }
  EXPECT_EQ(real_raster_bytes(3, 5), 60u);
  EXPECT_EQ(binary_raster_bytes(3, 5), 2u);
  EXPECT_EQ(binary_raster_bytes(8, 1), 1u);
}

TEST(Profile, RejectsBadArguments) {
  const GrayImage img = mole();
  EXPECT_THROW(profile_pipeline(img, {}, 0.0, 3), InvalidParameter);
  EXPECT_THROW(profile_pipeline(img, {}, 55.0, 2), InvalidParameter);
  EXPECT_THROW(profile_canny(img, 55.0, 1), InvalidParameter);
  const StageProfile c = profile_canny(img, 55.0, 3);
  EXPECT_EQ(c.name, "canny");
  EXPECT_EQ(c.input_bytes, real_raster_bytes(256, 256));
  EXPECT_EQ(c.output_bytes, binary_raster_bytes(256, 256));
}

TEST(ToPipeline, DefaultsAndOverrides) {
  std::vector<StageProfile> profiles = {{"gabor", 0.1, 5.5, 100, 100},
                                        {"threshold", 0.01, 0.55, 100, 13},
                                        {"canny", 0.02, 1.1, 100, 13}};
  const auto stages = to_pipeline(profiles);
  ASSERT_EQ(stages.size(), 3u);
  EXPECT_EQ(stages[0].affinity_for(DeviceKind::kGpgpu), 8.0);
  EXPECT_EQ(stages[0].affinity_for(DeviceKind::kMic), 4.0);
  EXPECT_EQ(stages[0].affinity_for(DeviceKind::kCpu), 1.0);
  EXPECT_EQ(stages[1].affinity_for(DeviceKind::kGpgpu), 1.0);
  EXPECT_EQ(stages[2].affinity_for(DeviceKind::kGpgpu), 8.0);
  for (std::size_t i = 0; i < 3; ++i) {
    EXPECT_EQ(stages[i].name, profiles[i].name);
    EXPECT_EQ(stages[i].compute_gflop, profiles[i].compute_gflop);
    EXPECT_EQ(stages[i].input_bytes, profiles[i].input_bytes);
    EXPECT_EQ(stages[i].output_bytes, profiles[i].output_bytes);
  }
  const auto over = to_pipeline(profiles, {{"threshold", {{DeviceKind::kGpgpu, 3.0}}}});
  EXPECT_EQ(over[1].affinity_for(DeviceKind::kGpgpu), 3.0);
  EXPECT_EQ(over[0].affinity, stages[0].affinity);
  EXPECT_THROW(to_pipeline(std::vector<StageProfile>{}), InvalidParameter);
  EXPECT_TRUE(is_convolution_stage("log"));
  EXPECT_FALSE(is_convolution_stage("thin"));
}

TEST(ToPipeline, ZeroComputeCostsOnlyTransfer) {
  const auto stages = to_pipeline(std::vector<StageProfile>{{"gabor", 0.0, 0.0, 12000, 12000}});
  EXPECT_EQ(stages[0].compute_gflop, 0.0);
  const DeviceSpec cpu = default_device(DeviceKind::kCpu, "cpu");
  const DeviceSpec gpu = default_device(DeviceKind::kGpgpu, "gpu");
  EXPECT_EQ(stage_cost(stages[0], cpu, {}), 0.0);
  const StageCost c = stage_cost_breakdown(stages[0], gpu, {});
  EXPECT_EQ(c.compute_s, 0.0);
  EXPECT_NEAR(c.total_s(), 2 * (gpu.link_latency_s + 12000 / (gpu.link_bandwidth_gbs * 1e9)), 1e-15);
  const Placement p = place_pipeline(stages, std::vector<DeviceSpec>{cpu, gpu}, PlacementMode::kExact);
  EXPECT_EQ(p.device_ids[0], "cpu");
}

TEST(ProfilesJson, RoundTrip) {
  ProfileSet set;
  set.assumed_host_rate_gflops = 55.0;
  set.repetitions = 5;
  set.stages = {{"segment", 0.0123456789, 0.679, 262144, 270336},
                {"geometry", 1e-6, 5.5e-5, 270336, 270336}};
  set.canny = StageProfile{"canny", 0.02, 1.1, 262144, 8192};
  const ProfileSet back = parse_profiles_json(profiles_to_json(set));
  EXPECT_EQ(back.assumed_host_rate_gflops, 55.0);
  EXPECT_EQ(back.repetitions, 5);
  EXPECT_EQ(back.stages, set.stages);
  EXPECT_EQ(back.canny, set.canny);
  EXPECT_EQ(profiles_to_json(back), profiles_to_json(set));
  EXPECT_THROW(parse_profiles_json(R"({"repetitions": 3, "stages": []})"), ParseError);
  EXPECT_THROW(parse_profiles_json(
                   R"({"assumed_host_rate_gflops": 1, "repetitions": 3, "stages": [], "x": 1})"),
               ParseError);
  EXPECT_THROW(parse_profiles_json("not json"), ParseError);
}

// One socket whose CPU runs at the assumed host rate and whose cards sit
// behind a vanishing link, so every stage stays on the host.
ClusterConfig host_only_cluster() {
  ClusterConfig c = default_cluster(1, 1);
  CpuSocket& s = c.machines[0].cpus[0];
  s.cpu.rated_gflops = kDefaultHostRateGflops;
  for (DeviceSpec& d : s.coprocessors) d.link_bandwidth_gbs = 1e-9;
  return c;
}

double median_detect_seconds(const GrayImage& img, int reps) {
  std::vector<double> t;
  for (int i = 0; i < reps; ++i) {
    const auto start = std::chrono::steady_clock::now();
    const StreakDetection d = detect_streaks(img);
    t.push_back(std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count());
    EXPECT_TRUE(d.report.streaks_present);
  }
  std::sort(t.begin(), t.end());
  return t[t.size() / 2];
}

TEST(Bridge, HostOnlySimulationReproducesWallTime) {
  const GrayImage img = mole();
  const auto profiles = profile_pipeline(img, {}, kDefaultHostRateGflops, 5);
  const auto stages = to_pipeline(profiles);
  const ClusterConfig cluster = host_only_cluster();
  std::vector<DeviceSpec> devices = {cluster.machines[0].cpus[0].cpu};
  for (const DeviceSpec& d : cluster.machines[0].cpus[0].coprocessors) devices.push_back(d);
  const Placement p = place_pipeline(stages, devices, PlacementMode::kExact);
  for (std::size_t idx : p.device_index) EXPECT_EQ(idx, 0u);

  const std::vector<Job> jobs = {{"j", stages, 0.0}};
  const ScheduleTrace trace = simulate(cluster, jobs);
  double measured_sum = 0.0;
  for (const auto& s : profiles) measured_sum += s.wall_time_s;
  EXPECT_NEAR(static_cast<double>(trace.makespan_us) * 1e-6, measured_sum,
              1e-6 * static_cast<double>(profiles.size()));

  double wall = 0.0;
  median_detect_seconds(img, 5);  // warm-up
  wall = median_detect_seconds(img, 5);
  EXPECT_NEAR(static_cast<double>(trace.makespan_us) * 1e-6, wall, 0.2 * wall);
}

TEST(Bridge, TenGigabitLinkOffloadsConvolutions) {
  const GrayImage img = mole();
  std::vector<StageProfile> profiles = profile_pipeline(img, {}, kDefaultHostRateGflops, 5);
  profiles.push_back(profile_canny(img, kDefaultHostRateGflops, 5));
  const auto stages = to_pipeline(profiles);
  std::vector<DeviceSpec> devices = {default_device(DeviceKind::kCpu, "cpu"),
                                     default_device(DeviceKind::kGpgpu, "gpu"),
                                     default_device(DeviceKind::kMic, "mic")};
  for (DeviceSpec& d : devices)
    if (!d.host_local) d.link_bandwidth_gbs = 10.0;
  const Placement p = place_pipeline(stages, devices, PlacementMode::kGreedy);
  for (std::size_t i = 0; i < stages.size(); ++i) {
    const bool host = devices[p.device_index[i]].host_local;
    if (stages[i].name == "log" || stages[i].name == "gabor" || stages[i].name == "canny") {
      EXPECT_FALSE(host) << stages[i].name;
    }
    if (stages[i].name == "threshold" || stages[i].name == "geometry") {
      EXPECT_TRUE(host) << stages[i].name;
    }
  }
}

}  // namespace
}  // namespace hybridsim
