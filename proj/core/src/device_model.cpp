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

#include "hybridsim/device_model.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>

#include "hybridsim/errors.hpp"

namespace hybridsim {

std::string_view to_string(DeviceKind kind) {
  switch (kind) {
    case DeviceKind::kCpu:
      return "CPU";
    case DeviceKind::kGpgpu:
      return "GPGPU";
    case DeviceKind::kMic:
      return "MIC";
  }
  return "?";
}

std::optional<DeviceKind> parse_device_kind(std::string_view name) {
  if (name == "CPU") return DeviceKind::kCpu;
  if (name == "GPGPU") return DeviceKind::kGpgpu;
  if (name == "MIC") return DeviceKind::kMic;
  return std::nullopt;
}

DeviceSpec default_device(DeviceKind kind, std::string id) {
  DeviceSpec spec;
  spec.id = std::move(id);
  spec.kind = kind;
  switch (kind) {
    case DeviceKind::kCpu:
      spec.rated_gflops = kCpuRatedGflops;
      spec.thermal_resistance_c = kCpuThermalResistanceC;
      spec.host_local = true;
      break;
    case DeviceKind::kGpgpu:
      spec.rated_gflops = kGpgpuRatedGflops;
      spec.thermal_resistance_c = kGpgpuThermalResistanceC;
      spec.host_local = false;
      spec.link_bandwidth_gbs = kDefaultLinkBandwidthGbs;
      spec.link_latency_s = kDefaultLinkLatencyS;
      break;
    case DeviceKind::kMic:
      spec.rated_gflops = kMicRatedGflops;
      spec.thermal_resistance_c = kMicThermalResistanceC;
      spec.host_local = false;
      spec.link_bandwidth_gbs = kDefaultLinkBandwidthGbs;
      spec.link_latency_s = kDefaultLinkLatencyS;
      break;
  }
  return spec;
}

bool is_valid_id(std::string_view id) {
  if (id.empty()) return false;
  return std::all_of(id.begin(), id.end(), [](char c) {
    return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') ||
           (c >= '0' && c <= '9') || c == '_' || c == '.' || c == ':' ||
           c == '-';
  });
}

void validate(const DeviceSpec& spec) {
  auto fail = [&](const std::string& what) {
    throw InvalidParameter("device '" + spec.id + "': " + what);
  };
  if (!is_valid_id(spec.id))
    throw InvalidParameter("invalid device id '" + spec.id + "'");
  if (!(spec.rated_gflops > 0.0) || !std::isfinite(spec.rated_gflops))
    fail("rated throughput must be positive");
  if (!spec.host_local && !(spec.link_bandwidth_gbs > 0.0))
    fail("link bandwidth must be positive for a linked device");
  if (!(spec.link_latency_s >= 0.0)) fail("link latency must be >= 0");
  if (!(spec.thermal_resistance_c >= 0.0))
    fail("thermal resistance must be >= 0");
  if (!(spec.thermal_time_constant_s > 0.0))
    fail("thermal time constant must be positive");
  if (!(spec.throttle_factor > 0.0 && spec.throttle_factor <= 1.0))
    fail("throttle factor must lie in (0, 1]");
  if (!std::isfinite(spec.throttle_temp_c)) fail("throttle temperature must be finite");
}

double steady_state_temp(const DeviceSpec& spec, double ambient_c,
                         double utilization, double duty) {
  if (!(utilization >= 0.0 && utilization <= 1.0))
    throw InvalidParameter("utilization must lie in [0, 1]");
  if (!(duty > 0.0)) throw InvalidParameter("cooling duty must be positive");
  return ambient_c + spec.thermal_resistance_c * utilization / duty;
}

double cooling_duty(const DeviceSpec& spec, double ambient_c,
                    double temperature_c, const CoolingControl& control) {
  const double span = spec.throttle_temp_c - ambient_c;
  if (!(span > 0.0))
    throw InvalidParameter("throttle temperature must exceed ambient");
  const double duty = control.duty_min + (temperature_c - ambient_c) / span;
  return std::clamp(duty, control.duty_min, 1.0);
}

ThermalState thermal_step(const ThermalState& state, const DeviceSpec& spec,
                          double ambient_c, double utilization, double dt_s,
                          const CoolingControl& control) {
  if (!(dt_s > 0.0)) throw InvalidParameter("thermal step needs dt > 0");
  if (!(control.duty_min > 0.0 && control.duty_min <= 1.0))
    throw InvalidParameter("duty_min must lie in (0, 1]");
  const double target =
      steady_state_temp(spec, ambient_c, utilization, state.cooling_duty);
  const double alpha = -std::expm1(-dt_s / spec.thermal_time_constant_s);
  ThermalState next;
  next.temperature_c =
      state.temperature_c + (target - state.temperature_c) * alpha;
  next.cooling_duty =
      control.proportional
          ? cooling_duty(spec, ambient_c, next.temperature_c, control)
          : state.cooling_duty;
  return next;
}

double effective_throughput(const DeviceSpec& spec, const ThermalState& state) {
  if (state.temperature_c < spec.throttle_temp_c) return spec.rated_gflops;
  return spec.rated_gflops * spec.throttle_factor;
}

ClusterConfig default_cluster(int machines, int cpus_per_machine) {
  if (machines < 1 || cpus_per_machine < 1)
    throw InvalidParameter("cluster needs at least one machine and one CPU");
  ClusterConfig cluster;
  for (int m = 0; m < machines; ++m) {
    Machine machine;
    for (int c = 0; c < cpus_per_machine; ++c) {
      const std::string prefix =
          "m" + std::to_string(m) + ".cpu" + std::to_string(c);
      CpuSocket socket;
      socket.cpu = default_device(DeviceKind::kCpu, prefix);
      socket.coprocessors.push_back(
          default_device(DeviceKind::kGpgpu, prefix + ".gpu"));
      socket.coprocessors.push_back(
          default_device(DeviceKind::kMic, prefix + ".mic"));
      machine.cpus.push_back(std::move(socket));
    }
    cluster.machines.push_back(std::move(machine));
  }
  return cluster;
}

std::vector<std::string> validate(const ClusterConfig& cluster) {
  std::vector<std::string> warnings;
  if (cluster.machines.empty())
    throw ConfigError("cluster must contain at least one machine");
  if (!(cluster.inter_machine_bandwidth_gbs > 0.0))
    throw ConfigError("inter-machine bandwidth must be positive");
  if (!(cluster.inter_machine_latency_s >= 0.0))
    throw ConfigError("inter-machine latency must be >= 0");
  if (!(cluster.cooling.duty_min > 0.0 && cluster.cooling.duty_min <= 1.0))
    throw ConfigError("duty_min must lie in (0, 1]");

  std::set<std::string> ids;
  auto check_device = [&](const DeviceSpec& spec) {
    try {
      validate(spec);
    } catch (const InvalidParameter& e) {
      throw ConfigError(e.what());
    }
    if (!ids.insert(spec.id).second)
      throw ConfigError("duplicate device id '" + spec.id + "'");
    if (!(spec.throttle_temp_c > cluster.ambient_temp_c))
      throw ConfigError("device '" + spec.id +
                        "': throttle temperature must exceed ambient");
  };

  for (std::size_t m = 0; m < cluster.machines.size(); ++m) {
    const Machine& machine = cluster.machines[m];
    if (machine.cpus.empty())
      throw ConfigError("machine " + std::to_string(m) + " has no CPU");
    for (const CpuSocket& socket : machine.cpus) {
      if (socket.cpu.kind != DeviceKind::kCpu || !socket.cpu.host_local)
        throw ConfigError("device '" + socket.cpu.id +
                          "' in a CPU slot must be a host-local CPU");
      check_device(socket.cpu);
      for (const DeviceSpec& co : socket.coprocessors) {
        if (co.kind == DeviceKind::kCpu || co.host_local)
          throw ConfigError("co-processor '" + co.id +
                            "' must be a linked GPGPU or MIC");
        check_device(co);
      }
    }
  }
  const std::size_t n = cluster.machines.size();
  if (n != 1 && n != 2 && n != 4) {
    std::ostringstream os;
    os << "machine count " << n
       << " is untested; piles of 1, 2 or 4 machines are supported";
    warnings.push_back(os.str());
  }
  return warnings;
}

std::vector<DeviceSpec> all_devices(const ClusterConfig& cluster) {
  std::vector<DeviceSpec> out;
  for (const Machine& machine : cluster.machines)
    for (const CpuSocket& socket : machine.cpus) {
      out.push_back(socket.cpu);
      out.insert(out.end(), socket.coprocessors.begin(),
                 socket.coprocessors.end());
    }
  return out;
}

double aggregate_throughput(const ClusterConfig& cluster) {
  double gflops = 0.0;
  for (const DeviceSpec& spec : all_devices(cluster)) gflops += spec.rated_gflops;
  return gflops / 1000.0;
}

}  // namespace hybridsim
