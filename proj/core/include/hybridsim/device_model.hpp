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

#ifndef HYBRIDSIM_DEVICE_MODEL_HPP_
#define HYBRIDSIM_DEVICE_MODEL_HPP_

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace hybridsim {

enum class DeviceKind { kCpu, kGpgpu, kMic };

std::string_view to_string(DeviceKind kind);
std::optional<DeviceKind> parse_device_kind(std::string_view name);

// One processing unit. Throughput is in GFLOP/s, bandwidth in GB/s
// (1 GB = 1e9 bytes), temperatures in degrees Celsius.
struct DeviceSpec {
  std::string id;
  DeviceKind kind = DeviceKind::kCpu;
  double rated_gflops = 0.0;
  // Host CPUs run stages in place; co-processors pay a transfer over their
  // link in both directions.
  bool host_local = true;
  double link_bandwidth_gbs = 0.0;
  double link_latency_s = 0.0;
  // Steady-state rise above ambient at full utilization and full cooling.
  double thermal_resistance_c = 0.0;
  double thermal_time_constant_s = 60.0;
  double throttle_temp_c = 90.0;
  double throttle_factor = 0.5;

  friend bool operator==(const DeviceSpec&, const DeviceSpec&) = default;
};

// Calibrated defaults. Full-load steady temperatures at 24 C ambient come out
// at 40/50/60 C for CPU/GPGPU/MIC, and sixteen of each sum to 350 TFLOP/s.
inline constexpr double kDefaultAmbientC = 24.0;
inline constexpr double kCpuRatedGflops = 750.0;
inline constexpr double kGpgpuRatedGflops = 12000.0;
inline constexpr double kMicRatedGflops = 9125.0;
inline constexpr double kCpuThermalResistanceC = 16.0;
inline constexpr double kGpgpuThermalResistanceC = 26.0;
inline constexpr double kMicThermalResistanceC = 36.0;
inline constexpr double kDefaultLinkBandwidthGbs = 12.0;
inline constexpr double kDefaultLinkLatencyS = 10e-6;
// Pump and fan speed observed under load versus their maximum (800 / 3500 RPM).
inline constexpr double kDefaultDutyMin = 800.0 / 3500.0;
// 1 Gbit/s twisted-pair link between piled machines.
inline constexpr double kDefaultInterMachineBandwidthGbs = 0.125;
inline constexpr double kDefaultInterMachineLatencyS = 100e-6;
// Power supply ratings of the reference build; informational only.
inline constexpr double kMainPsuWatts = 1700.0;
inline constexpr double kCoolingPsuWatts = 450.0;

DeviceSpec default_device(DeviceKind kind, std::string id);

// Ids travel through CSV traces unquoted: letters, digits and "_.:-" only.
bool is_valid_id(std::string_view id);

// Throws InvalidParameter when a field is outside its domain.
void validate(const DeviceSpec& spec);

// PWM-driven cooling: `cooling_duty` is the pump/fan duty cycle in
// [duty_min, 1].
struct ThermalState {
  double temperature_c = kDefaultAmbientC;
  double cooling_duty = 1.0;

  friend bool operator==(const ThermalState&, const ThermalState&) = default;
};

struct CoolingControl {
  double duty_min = kDefaultDutyMin;
  // When false the duty cycle is held at its current value.
  bool proportional = true;
};

double steady_state_temp(const DeviceSpec& spec, double ambient_c,
                         double utilization, double duty);

// Proportional PWM law: duty_min + (T - ambient) / (throttle - ambient),
// clamped to [duty_min, 1].
double cooling_duty(const DeviceSpec& spec, double ambient_c,
                    double temperature_c, const CoolingControl& control);

// First-order relaxation toward the steady-state temperature at the current
// duty, followed by a duty update from the new temperature.
ThermalState thermal_step(const ThermalState& state, const DeviceSpec& spec,
                          double ambient_c, double utilization, double dt_s,
                          const CoolingControl& control = {});

double effective_throughput(const DeviceSpec& spec, const ThermalState& state);

struct CpuSocket {
  DeviceSpec cpu;
  std::vector<DeviceSpec> coprocessors;
};

struct Machine {
  std::vector<CpuSocket> cpus;
};

struct ClusterConfig {
  std::vector<Machine> machines;
  double inter_machine_bandwidth_gbs = kDefaultInterMachineBandwidthGbs;
  double inter_machine_latency_s = kDefaultInterMachineLatencyS;
  double ambient_temp_c = kDefaultAmbientC;
  CoolingControl cooling;
};

// `machines` boards with `cpus_per_machine` sockets each; every socket gets
// one GPGPU and one MIC card. Ids look like "m0.cpu1.gpu".
ClusterConfig default_cluster(int machines = 1, int cpus_per_machine = 2);

// Throws ConfigError on structural problems (no CPU, duplicate ids, a host
// CPU marked as linked, ...). Returns non-fatal warnings, such as a machine
// count other than 1, 2 or 4.
std::vector<std::string> validate(const ClusterConfig& cluster);

std::vector<DeviceSpec> all_devices(const ClusterConfig& cluster);

// Sum of rated throughput over every device, in TFLOP/s.
double aggregate_throughput(const ClusterConfig& cluster);

// JSON document; see docs/formats.md. Unknown keys are rejected.
ClusterConfig parse_cluster_json(std::string_view text);
std::string cluster_to_json(const ClusterConfig& cluster);

}  // namespace hybridsim

#endif  // HYBRIDSIM_DEVICE_MODEL_HPP_
