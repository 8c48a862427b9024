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

#ifndef HYBRIDSIM_SCHEDULER_HPP_
#define HYBRIDSIM_SCHEDULER_HPP_

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "hybridsim/device_model.hpp"

namespace hybridsim {

// One step of a job's pipeline. `affinity` scales a device kind's effective
// throughput for this stage; kinds not listed run at 1x.
struct PipelineStage {
  std::string name;
  double compute_gflop = 0.0;
  std::uint64_t input_bytes = 0;
  std::uint64_t output_bytes = 0;
  std::map<DeviceKind, double> affinity;

  double affinity_for(DeviceKind kind) const;

  friend bool operator==(const PipelineStage&, const PipelineStage&) = default;
};

void validate(const PipelineStage& stage);

struct StageCost {
  double upload_s = 0.0;
  double compute_s = 0.0;
  double download_s = 0.0;

  double total_s() const { return upload_s + compute_s + download_s; }
};

// compute / (effective throughput * affinity), plus latency + bytes/bandwidth
// each way when the device is not host-local.
StageCost stage_cost_breakdown(const PipelineStage& stage,
                               const DeviceSpec& device,
                               const ThermalState& state);
double stage_cost(const PipelineStage& stage, const DeviceSpec& device,
                  const ThermalState& state);

enum class PlacementMode { kGreedy, kExact };

inline constexpr std::uint64_t kMaxExactAssignments = 1'000'000;

struct Placement {
  std::vector<std::size_t> device_index;  // into the device list
  std::vector<std::string> device_ids;
  std::vector<double> durations_s;
  double total_s = 0.0;  // stages of one job run back to back
};

// Greedy picks each stage's cheapest device independently; exact enumerates
// every assignment (at most kMaxExactAssignments) and minimizes the serial
// total. Ties go to host-local devices, then to the smaller device id.
// `states` is either empty (every device at ThermalState{}) or parallel to
// `devices`.
Placement place_pipeline(std::span<const PipelineStage> pipeline,
                         std::span<const DeviceSpec> devices, PlacementMode mode,
                         std::span<const ThermalState> states = {});

struct Job {
  std::string id;
  std::vector<PipelineStage> pipeline;
  double arrival_s = 0.0;
};

enum class EventKind { kStart, kTransferUp, kTransferDown, kFinish };

std::string_view to_string(EventKind kind);
std::optional<EventKind> parse_event_kind(std::string_view name);

// Event times are integer microseconds so that traces are exact and
// reproducible.
struct TraceEvent {
  std::int64_t time_us = 0;
  std::string job;
  std::string stage;
  std::string device;
  EventKind kind = EventKind::kStart;

  friend bool operator==(const TraceEvent&, const TraceEvent&) = default;
};

struct DeviceUsage {
  std::string device;
  DeviceKind kind = DeviceKind::kCpu;
  std::int64_t busy_us = 0;
  double final_temp_c = 0.0;
};

struct ScheduleTrace {
  std::vector<TraceEvent> events;
  std::int64_t makespan_us = 0;  // first arrival to last finish, 0 for no jobs
  std::vector<DeviceUsage> devices;  // in cluster order
};

enum class QueuePolicy { kFifo };

struct SimulationOptions {
  QueuePolicy policy = QueuePolicy::kFifo;
  PlacementMode placement = PlacementMode::kGreedy;
  // Start every device at this temperature instead of ambient (hot start).
  std::optional<double> initial_temp_c;
};

// Master/worker simulation. The master queue holds jobs in (arrival, id)
// order; each CPU socket with its co-processors is one subnode that takes the
// head job when idle and runs its stages back to back. Jobs dispatched to a
// machine other than the first pay an extra network hop for the first
// stage's input and the last stage's output.
ScheduleTrace simulate(const ClusterConfig& cluster, std::span<const Job> jobs,
                       const SimulationOptions& options = {});

std::int64_t seconds_to_us(double seconds);
std::string format_us(std::int64_t us);  // "12.000345"

// CSV with header `time_s,job,stage,device,event`.
std::string export_trace_csv(const ScheduleTrace& trace);
std::vector<TraceEvent> parse_trace_csv(std::string_view csv);
// Per-device utilization: `device,kind,busy_s,utilization,final_temp_c`.
std::string export_gantt_csv(const ScheduleTrace& trace);

// {"pipelines": {name: [stage, ...]}, "jobs": [{"id", "arrival_s",
// "pipeline": name | [stage, ...]}]}; see docs/formats.md.
std::vector<Job> parse_jobs_json(std::string_view text);
std::string jobs_to_json(std::span<const Job> jobs);
std::vector<PipelineStage> parse_pipeline_json(std::string_view text);
std::string pipeline_to_json(std::span<const PipelineStage> pipeline);

}  // namespace hybridsim

#endif  // HYBRIDSIM_SCHEDULER_HPP_
