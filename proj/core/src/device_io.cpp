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

#include <string>

#include "hybridsim/device_model.hpp"
#include "json_util.hpp"

namespace hybridsim {
namespace {

using json_util::json;

DeviceSpec device_from_json(const json& j, const std::string& where) {
  json_util::expect_object(j, where);
  json_util::reject_unknown_keys(
      j, where,
      {"id", "kind", "rated_gflops", "link_bandwidth_gb_s", "link_latency_s",
       "thermal_resistance_c", "thermal_time_constant_s", "throttle_temp_c",
       "throttle_factor", "coprocessors"});
  const std::string kind_name = json_util::string(j, "kind", where);
  const auto kind = parse_device_kind(kind_name);
  if (!kind) throw ConfigError(where + ": unknown device kind '" + kind_name + "'");
  DeviceSpec spec = default_device(*kind, json_util::string(j, "id", where));
  spec.rated_gflops = json_util::number_or(j, "rated_gflops", spec.rated_gflops, where);
  spec.link_bandwidth_gbs = json_util::number_or(
      j, "link_bandwidth_gb_s", spec.link_bandwidth_gbs, where);
  spec.link_latency_s =
      json_util::number_or(j, "link_latency_s", spec.link_latency_s, where);
  spec.thermal_resistance_c = json_util::number_or(
      j, "thermal_resistance_c", spec.thermal_resistance_c, where);
  spec.thermal_time_constant_s = json_util::number_or(
      j, "thermal_time_constant_s", spec.thermal_time_constant_s, where);
  spec.throttle_temp_c =
      json_util::number_or(j, "throttle_temp_c", spec.throttle_temp_c, where);
  spec.throttle_factor =
      json_util::number_or(j, "throttle_factor", spec.throttle_factor, where);
  return spec;
}

json device_to_json(const DeviceSpec& spec) {
  json j;
  j["id"] = spec.id;
  j["kind"] = std::string(to_string(spec.kind));
  j["rated_gflops"] = spec.rated_gflops;
  if (!spec.host_local) {
    j["link_bandwidth_gb_s"] = spec.link_bandwidth_gbs;
    j["link_latency_s"] = spec.link_latency_s;
  }
  j["thermal_resistance_c"] = spec.thermal_resistance_c;
  j["thermal_time_constant_s"] = spec.thermal_time_constant_s;
  j["throttle_temp_c"] = spec.throttle_temp_c;
  j["throttle_factor"] = spec.throttle_factor;
  return j;
}

}  // namespace

ClusterConfig parse_cluster_json(std::string_view text) {
  const json root = json_util::parse(text, "cluster");
  json_util::expect_object(root, "cluster");
  json_util::reject_unknown_keys(
      root, "cluster",
      {"ambient_temp_c", "inter_machine_bandwidth_gb_s",
       "inter_machine_latency_s", "cooling", "machines"});

  ClusterConfig cluster;
  cluster.ambient_temp_c = json_util::number_or(
      root, "ambient_temp_c", cluster.ambient_temp_c, "cluster");
  cluster.inter_machine_bandwidth_gbs =
      json_util::number_or(root, "inter_machine_bandwidth_gb_s",
                           cluster.inter_machine_bandwidth_gbs, "cluster");
  cluster.inter_machine_latency_s = json_util::number_or(
      root, "inter_machine_latency_s", cluster.inter_machine_latency_s, "cluster");
  if (root.contains("cooling")) {
    const json& cooling = root["cooling"];
    json_util::expect_object(cooling, "cluster.cooling");
    json_util::reject_unknown_keys(cooling, "cluster.cooling",
                                   {"duty_min", "proportional"});
    cluster.cooling.duty_min = json_util::number_or(
        cooling, "duty_min", cluster.cooling.duty_min, "cluster.cooling");
    cluster.cooling.proportional = json_util::boolean_or(
        cooling, "proportional", cluster.cooling.proportional, "cluster.cooling");
  }

  if (!root.contains("machines"))
    json_util::schema_error("cluster", "missing key 'machines'");
  const json& machines = root["machines"];
  json_util::expect_array(machines, "cluster.machines");
  for (std::size_t m = 0; m < machines.size(); ++m) {
    const std::string where = "cluster.machines[" + std::to_string(m) + "]";
    json_util::expect_object(machines[m], where);
    json_util::reject_unknown_keys(machines[m], where, {"cpus"});
    if (!machines[m].contains("cpus"))
      json_util::schema_error(where, "missing key 'cpus'");
    const json& cpus = machines[m]["cpus"];
    json_util::expect_array(cpus, where + ".cpus");
    Machine machine;
    for (std::size_t c = 0; c < cpus.size(); ++c) {
      const std::string cw = where + ".cpus[" + std::to_string(c) + "]";
      CpuSocket socket;
      socket.cpu = device_from_json(cpus[c], cw);
      if (cpus[c].contains("coprocessors")) {
        const json& cos = cpus[c]["coprocessors"];
        json_util::expect_array(cos, cw + ".coprocessors");
        for (std::size_t k = 0; k < cos.size(); ++k) {
          const std::string kw = cw + ".coprocessors[" + std::to_string(k) + "]";
          if (cos[k].is_object() && cos[k].contains("coprocessors"))
            json_util::schema_error(kw, "co-processors cannot nest");
          socket.coprocessors.push_back(device_from_json(cos[k], kw));
        }
      }
      machine.cpus.push_back(std::move(socket));
    }
    cluster.machines.push_back(std::move(machine));
  }
  validate(cluster);
  return cluster;
}

std::string cluster_to_json(const ClusterConfig& cluster) {
  json root;
  root["ambient_temp_c"] = cluster.ambient_temp_c;
  root["inter_machine_bandwidth_gb_s"] = cluster.inter_machine_bandwidth_gbs;
  root["inter_machine_latency_s"] = cluster.inter_machine_latency_s;
  root["cooling"] = {{"duty_min", cluster.cooling.duty_min},
                     {"proportional", cluster.cooling.proportional}};
  json machines = json::array();
  for (const Machine& machine : cluster.machines) {
    json cpus = json::array();
    for (const CpuSocket& socket : machine.cpus) {
      json cpu = device_to_json(socket.cpu);
      json cos = json::array();
      for (const DeviceSpec& co : socket.coprocessors) cos.push_back(device_to_json(co));
      cpu["coprocessors"] = std::move(cos);
      cpus.push_back(std::move(cpu));
    }
    machines.push_back({{"cpus", std::move(cpus)}});
  }
  root["machines"] = std::move(machines);
  return root.dump(2) + "\n";
}

}  // namespace hybridsim
