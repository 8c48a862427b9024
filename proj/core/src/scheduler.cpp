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

#include "hybridsim/scheduler.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <limits>
#include <set>
#include <sstream>
#include <tuple>

#include "hybridsim/errors.hpp"

namespace hybridsim {

double PipelineStage::affinity_for(DeviceKind kind) const {
  auto it = affinity.find(kind);
  return it == affinity.end() ? 1.0 : it->second;
}

void validate(const PipelineStage& stage) {
  if (!is_valid_id(stage.name))
    throw InvalidParameter("invalid stage name '" + stage.name + "'");
  if (!(stage.compute_gflop >= 0.0) || !std::isfinite(stage.compute_gflop))
    throw InvalidParameter("stage '" + stage.name + "': compute cost must be >= 0");
  for (const auto& [kind, multiplier] : stage.affinity)
    if (!(multiplier > 0.0) || !std::isfinite(multiplier))
      throw InvalidParameter("stage '" + stage.name + "': affinity for " +
                             std::string(to_string(kind)) + " must be > 0");
}

StageCost stage_cost_breakdown(const PipelineStage& stage,
                               const DeviceSpec& device,
                               const ThermalState& state) {
  const double rate =
      effective_throughput(device, state) * stage.affinity_for(device.kind);
  if (!(rate > 0.0))
    throw InvalidParameter("device '" + device.id + "' has zero throughput");
  StageCost cost;
  cost.compute_s = stage.compute_gflop / rate;
  if (!device.host_local) {
    const double bytes_per_s = device.link_bandwidth_gbs * 1e9;
    cost.upload_s = device.link_latency_s +
                    static_cast<double>(stage.input_bytes) / bytes_per_s;
    cost.download_s = device.link_latency_s +
                      static_cast<double>(stage.output_bytes) / bytes_per_s;
  }
  return cost;
}

double stage_cost(const PipelineStage& stage, const DeviceSpec& device,
                  const ThermalState& state) {
  return stage_cost_breakdown(stage, device, state).total_s();
}

namespace {

// Host-local devices first, then ascending id.
bool preferred(const DeviceSpec& a, const DeviceSpec& b) {
  if (a.host_local != b.host_local) return a.host_local;
  return a.id < b.id;
}

}  // namespace

Placement place_pipeline(std::span<const PipelineStage> pipeline,
                         std::span<const DeviceSpec> devices, PlacementMode mode,
                         std::span<const ThermalState> states) {
  if (pipeline.empty()) throw InvalidParameter("pipeline must not be empty");
  if (devices.empty()) throw InvalidParameter("device list must not be empty");
  if (!states.empty() && states.size() != devices.size())
    throw InvalidParameter("thermal states must parallel the device list");
  for (const DeviceSpec& d : devices) validate(d);
  for (const PipelineStage& s : pipeline) validate(s);

  const std::size_t n = pipeline.size();
  const std::size_t m = devices.size();
  std::vector<double> cost(n * m);
  for (std::size_t s = 0; s < n; ++s)
    for (std::size_t d = 0; d < m; ++d)
      cost[s * m + d] = stage_cost(pipeline[s], devices[d],
                                   states.empty() ? ThermalState{} : states[d]);

  // Device ranks by tie-break preference.
  std::vector<std::size_t> by_pref(m);
  for (std::size_t d = 0; d < m; ++d) by_pref[d] = d;
  std::sort(by_pref.begin(), by_pref.end(), [&](std::size_t a, std::size_t b) {
    return preferred(devices[a], devices[b]);
  });

  std::vector<std::size_t> chosen(n);
  if (mode == PlacementMode::kGreedy) {
    for (std::size_t s = 0; s < n; ++s) {
      std::size_t best = by_pref[0];
      for (std::size_t d : by_pref)
        if (cost[s * m + d] < cost[s * m + best]) best = d;
      chosen[s] = best;
    }
  } else {
    std::uint64_t total = 1;
    for (std::size_t s = 0; s < n; ++s) {
      if (total > kMaxExactAssignments / m)
        throw SizeLimitError("exact placement would enumerate more than " +
                             std::to_string(kMaxExactAssignments) +
                             " assignments");
      total *= m;
    }
    // Odometer over preference ranks so that the first minimum found is also
    // the lexicographically preferred one.
    std::vector<std::size_t> rank(n, 0);
    double best_total = std::numeric_limits<double>::infinity();
    bool have_best = false;
    for (std::uint64_t iter = 0; iter < total; ++iter) {
      double sum = 0.0;
      for (std::size_t s = 0; s < n; ++s) sum += cost[s * m + by_pref[rank[s]]];
      if (!have_best || sum < best_total) {
        have_best = true;
        best_total = sum;
        for (std::size_t s = 0; s < n; ++s) chosen[s] = by_pref[rank[s]];
      }
      for (std::size_t s = n; s-- > 0;) {
        if (++rank[s] < m) break;
        rank[s] = 0;
      }
    }
  }

  Placement placement;
  placement.device_index = chosen;
  for (std::size_t s = 0; s < n; ++s) {
    placement.device_ids.push_back(devices[chosen[s]].id);
    placement.durations_s.push_back(cost[s * m + chosen[s]]);
    placement.total_s += cost[s * m + chosen[s]];
  }
  return placement;
}

std::string_view to_string(EventKind kind) {
  switch (kind) {
    case EventKind::kStart:
      return "start";
    case EventKind::kTransferUp:
      return "transfer_up";
    case EventKind::kTransferDown:
      return "transfer_down";
    case EventKind::kFinish:
      return "finish";
  }
  return "?";
}

std::optional<EventKind> parse_event_kind(std::string_view name) {
  if (name == "start") return EventKind::kStart;
  if (name == "transfer_up") return EventKind::kTransferUp;
  if (name == "transfer_down") return EventKind::kTransferDown;
  if (name == "finish") return EventKind::kFinish;
  return std::nullopt;
}

std::int64_t seconds_to_us(double seconds) {
  // About 100 days; anything longer means a degenerate link or device.
  if (!std::isfinite(seconds) || seconds < 0.0 || seconds > 1e7)
    throw InvalidParameter("duration is not representable in the trace");
  return std::llround(seconds * 1e6);
}

std::string format_us(std::int64_t us) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%lld.%06lld",
                static_cast<long long>(us / 1000000),
                static_cast<long long>(us % 1000000));
  return buf;
}

namespace {

struct Subnode {
  std::size_t machine = 0;
  std::vector<std::size_t> devices;  // flat indices, CPU first
};

struct SortableEvent {
  TraceEvent event;
  std::size_t stage_index = 0;
};

int kind_rank(EventKind kind) { return static_cast<int>(kind); }

}  // namespace

ScheduleTrace simulate(const ClusterConfig& cluster, std::span<const Job> jobs,
                       const SimulationOptions& options) {
  validate(cluster);

  std::vector<DeviceSpec> devices;
  std::vector<Subnode> subnodes;
  for (std::size_t m = 0; m < cluster.machines.size(); ++m) {
    for (const CpuSocket& socket : cluster.machines[m].cpus) {
      Subnode sub;
      sub.machine = m;
      sub.devices.push_back(devices.size());
      devices.push_back(socket.cpu);
      for (const DeviceSpec& co : socket.coprocessors) {
        sub.devices.push_back(devices.size());
        devices.push_back(co);
      }
      subnodes.push_back(std::move(sub));
    }
  }

  std::set<std::string> job_ids;
  for (const Job& job : jobs) {
    if (!is_valid_id(job.id)) throw InvalidParameter("invalid job id '" + job.id + "'");
    if (!job_ids.insert(job.id).second)
      throw InvalidParameter("duplicate job id '" + job.id + "'");
    if (job.pipeline.empty())
      throw InvalidParameter("job '" + job.id + "' has an empty pipeline");
    if (!(job.arrival_s >= 0.0))
      throw InvalidParameter("job '" + job.id + "' arrives before time 0");
    for (const PipelineStage& stage : job.pipeline) validate(stage);
  }

  const double ambient = cluster.ambient_temp_c;
  std::vector<ThermalState> states(devices.size());
  for (std::size_t d = 0; d < devices.size(); ++d) {
    ThermalState& st = states[d];
    st.temperature_c = options.initial_temp_c.value_or(ambient);
    st.cooling_duty =
        cluster.cooling.proportional
            ? cooling_duty(devices[d], ambient, st.temperature_c, cluster.cooling)
            : 1.0;
  }
  std::vector<std::int64_t> updated_us(devices.size(), 0);
  std::vector<std::int64_t> busy_us(devices.size(), 0);

  auto advance = [&](std::size_t d, std::int64_t to_us, double utilization) {
    if (to_us > updated_us[d]) {
      states[d] = thermal_step(states[d], devices[d], ambient, utilization,
                               static_cast<double>(to_us - updated_us[d]) * 1e-6,
                               cluster.cooling);
      updated_us[d] = to_us;
    }
  };

  std::vector<std::size_t> order(jobs.size());
  std::vector<std::int64_t> arrival_us(jobs.size());
  for (std::size_t j = 0; j < jobs.size(); ++j) {
    order[j] = j;
    arrival_us[j] = seconds_to_us(jobs[j].arrival_s);
  }
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return std::tie(arrival_us[a], jobs[a].id) < std::tie(arrival_us[b], jobs[b].id);
  });

  const double hop_bytes_per_s = cluster.inter_machine_bandwidth_gbs * 1e9;
  std::vector<std::int64_t> free_at(subnodes.size(), 0);
  std::vector<SortableEvent> events;
  ScheduleTrace trace;
  std::int64_t last_finish_us = 0;

  // FIFO master queue: the head job goes to whichever subnode can start it
  // first; simultaneous idleness resolves to the lowest subnode index.
  for (std::size_t j : order) {
    const Job& job = jobs[j];
    std::size_t pick = 0;
    std::int64_t start = std::max(free_at[0], arrival_us[j]);
    for (std::size_t s = 1; s < subnodes.size(); ++s) {
      const std::int64_t t = std::max(free_at[s], arrival_us[j]);
      if (t < start) {
        start = t;
        pick = s;
      }
    }
    const Subnode& sub = subnodes[pick];

    std::vector<DeviceSpec> local;
    std::vector<ThermalState> local_states;
    for (std::size_t d : sub.devices) {
      advance(d, start, 0.0);
      local.push_back(devices[d]);
      local_states.push_back(states[d]);
    }
    const Placement placement =
        place_pipeline(job.pipeline, local, options.placement, local_states);

    const bool remote = sub.machine != 0;
    std::int64_t t = start;
    const std::size_t last = job.pipeline.size() - 1;
    for (std::size_t k = 0; k <= last; ++k) {
      const PipelineStage& stage = job.pipeline[k];
      const std::size_t d = sub.devices[placement.device_index[k]];
      advance(d, t, 0.0);
      const StageCost cost = stage_cost_breakdown(stage, devices[d], states[d]);
      std::int64_t up = seconds_to_us(cost.upload_s);
      const std::int64_t compute = seconds_to_us(cost.compute_s);
      std::int64_t down = seconds_to_us(cost.download_s);
      if (remote && k == 0)
        up += seconds_to_us(cluster.inter_machine_latency_s +
                            static_cast<double>(stage.input_bytes) / hop_bytes_per_s);
      if (remote && k == last)
        down += seconds_to_us(cluster.inter_machine_latency_s +
                              static_cast<double>(stage.output_bytes) / hop_bytes_per_s);
      const bool moves_up = !devices[d].host_local || (remote && k == 0);
      const bool moves_down = !devices[d].host_local || (remote && k == last);

      auto emit = [&](std::int64_t at, EventKind kind) {
        events.push_back({{at, job.id, stage.name, devices[d].id, kind}, k});
      };
      emit(t, EventKind::kStart);
      if (moves_up) emit(t, EventKind::kTransferUp);
      if (moves_down) emit(t + up + compute, EventKind::kTransferDown);
      const std::int64_t end = t + up + compute + down;
      emit(end, EventKind::kFinish);

      advance(d, end, 1.0);
      busy_us[d] += end - t;
      t = end;
    }
    free_at[pick] = t;
    last_finish_us = std::max(last_finish_us, t);
  }
  if (!order.empty()) trace.makespan_us = last_finish_us - arrival_us[order.front()];

  std::stable_sort(events.begin(), events.end(),
                   [](const SortableEvent& a, const SortableEvent& b) {
                     return std::make_tuple(a.event.time_us, std::cref(a.event.job),
                                            a.stage_index, kind_rank(a.event.kind)) <
                            std::make_tuple(b.event.time_us, std::cref(b.event.job),
                                            b.stage_index, kind_rank(b.event.kind));
                   });
  trace.events.reserve(events.size());
  for (SortableEvent& e : events) trace.events.push_back(std::move(e.event));

  for (std::size_t d = 0; d < devices.size(); ++d) {
    advance(d, last_finish_us, 0.0);
    trace.devices.push_back(
        {devices[d].id, devices[d].kind, busy_us[d], states[d].temperature_c});
  }
  return trace;
}

std::string export_trace_csv(const ScheduleTrace& trace) {
  std::string out = "time_s,job,stage,device,event\n";
  for (const TraceEvent& e : trace.events) {
    out += format_us(e.time_us);
    out += ',';
    out += e.job;
    out += ',';
    out += e.stage;
    out += ',';
    out += e.device;
    out += ',';
    out += to_string(e.kind);
    out += '\n';
  }
  return out;
}

namespace {

std::int64_t parse_time_us(std::string_view field, std::size_t line) {
  auto fail = [&]() -> std::int64_t {
    throw ParseError(ParseErrorKind::kBadValue,
                     "trace line " + std::to_string(line) + ": bad time '" +
                         std::string(field) + "'");
  };
  const std::size_t dot = field.find('.');
  const std::string_view whole = field.substr(0, dot);
  std::int64_t seconds = 0;
  auto [p, ec] = std::from_chars(whole.data(), whole.data() + whole.size(), seconds);
  if (ec != std::errc() || p != whole.data() + whole.size() || whole.empty() ||
      seconds < 0)
    return fail();
  std::int64_t micros = 0;
  if (dot != std::string_view::npos) {
    const std::string_view frac = field.substr(dot + 1);
    if (frac.empty() || frac.size() > 6) return fail();
    for (char c : frac) {
      if (c < '0' || c > '9') return fail();
      micros = micros * 10 + (c - '0');
    }
    for (std::size_t i = frac.size(); i < 6; ++i) micros *= 10;
  }
  return seconds * 1000000 + micros;
}

}  // namespace

std::vector<TraceEvent> parse_trace_csv(std::string_view csv) {
  std::vector<TraceEvent> events;
  std::size_t pos = 0;
  std::size_t line_no = 0;
  bool header_seen = false;
  while (pos < csv.size()) {
    std::size_t eol = csv.find('\n', pos);
    if (eol == std::string_view::npos) eol = csv.size();
    std::string_view line = csv.substr(pos, eol - pos);
    pos = eol + 1;
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (!header_seen) {
      if (line != "time_s,job,stage,device,event")
        throw ParseError(ParseErrorKind::kBadHeader, "trace: unexpected CSV header");
      header_seen = true;
      continue;
    }
    if (line.empty()) continue;
    std::vector<std::string_view> fields;
    std::size_t start = 0;
    while (true) {
      const std::size_t comma = line.find(',', start);
      fields.push_back(line.substr(start, comma - start));
      if (comma == std::string_view::npos) break;
      start = comma + 1;
    }
    if (fields.size() != 5)
      throw ParseError(ParseErrorKind::kBadValue,
                       "trace line " + std::to_string(line_no) + ": expected 5 fields");
    const auto kind = parse_event_kind(fields[4]);
    if (!kind)
      throw ParseError(ParseErrorKind::kBadValue,
                       "trace line " + std::to_string(line_no) + ": unknown event '" +
                           std::string(fields[4]) + "'");
    events.push_back({parse_time_us(fields[0], line_no), std::string(fields[1]),
                      std::string(fields[2]), std::string(fields[3]), *kind});
  }
  if (!header_seen)
    throw ParseError(ParseErrorKind::kBadHeader, "trace: missing CSV header");
  return events;
}

std::string export_gantt_csv(const ScheduleTrace& trace) {
  std::string out = "device,kind,busy_s,utilization,final_temp_c\n";
  char buf[64];
  for (const DeviceUsage& u : trace.devices) {
    const double utilization =
        trace.makespan_us > 0
            ? static_cast<double>(u.busy_us) / static_cast<double>(trace.makespan_us)
            : 0.0;
    out += u.device;
    out += ',';
    out += to_string(u.kind);
    out += ',';
    out += format_us(u.busy_us);
    std::snprintf(buf, sizeof buf, ",%.6f,%.3f\n", utilization, u.final_temp_c);
    out += buf;
  }
  return out;
}

}  // namespace hybridsim
