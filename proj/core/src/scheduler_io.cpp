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

#include <map>
#include <string>

#include "hybridsim/scheduler.hpp"
#include "json_util.hpp"

namespace hybridsim {
namespace {

using json_util::json;

std::uint64_t byte_count(const json& j, std::string_view key,
                         const std::string& where) {
  if (!j.contains(key)) return 0;
  const json& v = j[std::string(key)];
  if (!v.is_number_integer() && !v.is_number_unsigned())
    json_util::schema_error(where, "'" + std::string(key) + "' must be an integer");
  if (v.is_number_integer() && v.get<std::int64_t>() < 0)
    json_util::schema_error(where, "'" + std::string(key) + "' must be >= 0");
  return v.get<std::uint64_t>();
}

PipelineStage stage_from_json(const json& j, const std::string& where) {
  json_util::expect_object(j, where);
  json_util::reject_unknown_keys(
      j, where, {"name", "compute_gflop", "input_bytes", "output_bytes", "affinity"});
  PipelineStage stage;
  stage.name = json_util::string(j, "name", where);
  stage.compute_gflop = json_util::number(j, "compute_gflop", where);
  stage.input_bytes = byte_count(j, "input_bytes", where);
  stage.output_bytes = byte_count(j, "output_bytes", where);
  if (j.contains("affinity")) {
    const json& aff = j["affinity"];
    json_util::expect_object(aff, where + ".affinity");
    for (auto it = aff.begin(); it != aff.end(); ++it) {
      const auto kind = parse_device_kind(it.key());
      if (!kind)
        throw ConfigError(where + ": affinity names unknown device kind '" +
                          it.key() + "'");
      if (!it->is_number())
        json_util::schema_error(where, "affinity multipliers must be numbers");
      stage.affinity[*kind] = it->get<double>();
    }
  }
  try {
    validate(stage);
  } catch (const InvalidParameter& e) {
    throw ConfigError(where + ": " + e.what());
  }
  return stage;
}

std::vector<PipelineStage> pipeline_from_json(const json& j, const std::string& where) {
  json_util::expect_array(j, where);
  if (j.empty()) json_util::schema_error(where, "pipeline must not be empty");
  std::vector<PipelineStage> out;
  for (std::size_t i = 0; i < j.size(); ++i)
    out.push_back(stage_from_json(j[i], where + "[" + std::to_string(i) + "]"));
  return out;
}

json stage_to_json(const PipelineStage& stage) {
  json j;
  j["name"] = stage.name;
  j["compute_gflop"] = stage.compute_gflop;
  j["input_bytes"] = stage.input_bytes;
  j["output_bytes"] = stage.output_bytes;
  if (!stage.affinity.empty()) {
    json aff = json::object();
    for (const auto& [kind, multiplier] : stage.affinity)
      aff[std::string(to_string(kind))] = multiplier;
    j["affinity"] = std::move(aff);
  }
  return j;
}

}  // namespace

std::vector<PipelineStage> parse_pipeline_json(std::string_view text) {
  return pipeline_from_json(json_util::parse(text, "pipeline"), "pipeline");
}

std::string pipeline_to_json(std::span<const PipelineStage> pipeline) {
  json root = json::array();
  for (const PipelineStage& s : pipeline) root.push_back(stage_to_json(s));
  return root.dump(2) + "\n";
}

std::vector<Job> parse_jobs_json(std::string_view text) {
  const json root = json_util::parse(text, "jobs");
  json_util::expect_object(root, "jobs");
  json_util::reject_unknown_keys(root, "jobs", {"pipelines", "jobs"});

  std::map<std::string, std::vector<PipelineStage>, std::less<>> named;
  if (root.contains("pipelines")) {
    const json& pipelines = root["pipelines"];
    json_util::expect_object(pipelines, "jobs.pipelines");
    for (auto it = pipelines.begin(); it != pipelines.end(); ++it)
      named[it.key()] = pipeline_from_json(*it, "jobs.pipelines." + it.key());
  }

  if (!root.contains("jobs")) json_util::schema_error("jobs", "missing key 'jobs'");
  const json& list = root["jobs"];
  json_util::expect_array(list, "jobs.jobs");
  std::vector<Job> jobs;
  for (std::size_t i = 0; i < list.size(); ++i) {
    const std::string where = "jobs.jobs[" + std::to_string(i) + "]";
    const json& j = list[i];
    json_util::expect_object(j, where);
    json_util::reject_unknown_keys(j, where, {"id", "arrival_s", "pipeline"});
    Job job;
    job.id = json_util::string(j, "id", where);
    job.arrival_s = json_util::number_or(j, "arrival_s", 0.0, where);
    if (!j.contains("pipeline")) json_util::schema_error(where, "missing key 'pipeline'");
    const json& p = j["pipeline"];
    if (p.is_string()) {
      auto it = named.find(p.get<std::string>());
      if (it == named.end())
        throw ConfigError(where + ": unknown pipeline '" + p.get<std::string>() + "'");
      job.pipeline = it->second;
    } else {
      job.pipeline = pipeline_from_json(p, where + ".pipeline");
    }
    jobs.push_back(std::move(job));
  }
  return jobs;
}

std::string jobs_to_json(std::span<const Job> jobs) {
  json list = json::array();
  for (const Job& job : jobs) {
    json pipeline = json::array();
    for (const PipelineStage& s : job.pipeline) pipeline.push_back(stage_to_json(s));
    list.push_back({{"id", job.id}, {"arrival_s", job.arrival_s}, {"pipeline", pipeline}});
  }
  json root;
  root["jobs"] = std::move(list);
  return root.dump(2) + "\n";
}

}  // namespace hybridsim
