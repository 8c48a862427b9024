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

#include "hybridsim/workload_bridge.hpp"

#include <algorithm>
#include <array>
#include <chrono>
#include <functional>

#include "json_util.hpp"

namespace hybridsim {
namespace {

using Clock = std::chrono::steady_clock;

constexpr std::array<std::string_view, 8> kStageNames = {
    "segment", "geometry", "rotate", "log", "gabor", "threshold", "thin", "segments_criteria"};
constexpr std::uint64_t kVerdictBytes = 64;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

double median(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  const std::size_t n = v.size();
  return n % 2 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

void check_profile_args(double rate, int repetitions) {
  if (!(rate > 0.0) || !std::isfinite(rate))
    throw InvalidParameter("assumed host rate must be positive");
  if (repetitions < kMinRepetitions)
    throw InvalidParameter("at least " + std::to_string(kMinRepetitions) + " repetitions required");
}

// Stage outputs of one pass, kept so the next stage consumes real data.
struct PassState {
  BinaryImage mask;
  LesionGeometry geometry;
  GrayImage rotated;
  BinaryImage rotated_mask;
  LesionGeometry rotated_geometry;
  ResolvedFilter filter;
  BinaryImage region;
  RealImage log;
  RealImage gabor;
  BinaryImage ridges;
  Skeleton skeleton;
  std::vector<SegmentVerdict> verdicts;
};

}  // namespace

std::uint64_t real_raster_bytes(int width, int height) {
  return 4ull * static_cast<std::uint64_t>(width) * static_cast<std::uint64_t>(height);
}

std::uint64_t binary_raster_bytes(int width, int height) {
  return (static_cast<std::uint64_t>(width) * static_cast<std::uint64_t>(height) + 7) / 8;
}

std::span<const std::string_view> pipeline_stage_names() { return kStageNames; }

std::vector<StageProfile> profile_pipeline(const GrayImage& image, const DetectionConfig& config,
                                           double assumed_host_rate_gflops, int repetitions) {
  check_profile_args(assumed_host_rate_gflops, repetitions);
  validate(config.criteria);
  validate(config.filter);
  const FilterParams& fp = config.filter;
  const StreakCriteria& crit = config.criteria;

  PassState s;
  const std::array<std::function<void()>, 8> steps = {
      [&] { s.mask = segment_lesion(image, fp.dark_lesion); },
      [&] { s.geometry = lesion_geometry(s.mask); },
      [&] {
        const RotationFrame frame = major_axis_frame(image, s.geometry);
        s.rotated = rotate_image(image, frame, border_median(image));
        s.rotated_mask = rotate_mask(s.mask, frame);
        s.rotated_geometry = lesion_geometry(s.rotated_mask);
        s.filter = resolve(fp, s.rotated_geometry);
        s.region = ridge_region(s.rotated_mask, s.filter);
      },
      [&] { s.log = log_filter(s.rotated, s.filter.log_sigma); },
      [&] {
        s.gabor = gabor_bank(s.log, s.filter.wavelength, s.filter.gabor_sigma,
                             s.filter.gabor_gamma, fp.orientations);
      },
      [&] { s.ridges = threshold_ridges(s.gabor, s.region, fp); },
      [&] {
        s.skeleton =
            remove_spurs(thin(clean_ridges(s.ridges, s.filter, fp)), s.filter.spur_length);
      },
      [&] {
        s.verdicts.clear();
        for (const SkeletonSegment& seg :
             prune_segments(extract_segments(s.skeleton), s.rotated_geometry, crit.len_min_frac,
                            crit.len_max_frac))
          s.verdicts.push_back(
              qualify_segment(seg, s.rotated, s.rotated_mask, s.rotated_geometry, crit));
      },
  };

  std::vector<std::vector<double>> times(steps.size());
  for (int rep = 0; rep < repetitions; ++rep)
    for (std::size_t k = 0; k < steps.size(); ++k) {
      const auto start = Clock::now();
      steps[k]();
      times[k].push_back(seconds_since(start));
    }

  const std::uint64_t gray = real_raster_bytes(image.width(), image.height());
  const std::uint64_t gray_and_mask = gray + binary_raster_bytes(image.width(), image.height());
  const std::uint64_t rotated = real_raster_bytes(s.rotated.width(), s.rotated.height());
  const std::uint64_t binary = binary_raster_bytes(s.rotated.width(), s.rotated.height());
  const std::array<std::uint64_t, 9> chain = {
      gray, gray_and_mask, gray_and_mask, rotated, rotated, rotated, binary, binary,
      kVerdictBytes * s.verdicts.size()};

  std::vector<StageProfile> out;
  for (std::size_t k = 0; k < steps.size(); ++k) {
    StageProfile p;
    p.name = std::string(kStageNames[k]);
    p.wall_time_s = median(times[k]);
    p.compute_gflop = p.wall_time_s * assumed_host_rate_gflops;
    p.input_bytes = chain[k];
    p.output_bytes = chain[k + 1];
    out.push_back(p);
  }
  return out;
}

StageProfile profile_canny(const GrayImage& image, double assumed_host_rate_gflops,
                           int repetitions) {
  check_profile_args(assumed_host_rate_gflops, repetitions);
  std::vector<double> times;
  for (int rep = 0; rep < repetitions; ++rep) {
    const auto start = Clock::now();
    const BinaryImage edges =
        canny(image, kProfileCannySigma, kProfileCannyLow, kProfileCannyHighPercentile);
    times.push_back(seconds_since(start));
    (void)edges;
  }
  StageProfile p;
  p.name = "canny";
  p.wall_time_s = median(times);
  p.compute_gflop = p.wall_time_s * assumed_host_rate_gflops;
  p.input_bytes = real_raster_bytes(image.width(), image.height());
  p.output_bytes = binary_raster_bytes(image.width(), image.height());
  return p;
}

bool is_convolution_stage(std::string_view name) {
  return name == "log" || name == "gabor" || name == "canny";
}

std::map<DeviceKind, double> default_affinity(std::string_view stage_name) {
  if (is_convolution_stage(stage_name)) return {{DeviceKind::kGpgpu, 8.0}, {DeviceKind::kMic, 4.0}};
  return {};
}

std::vector<PipelineStage> to_pipeline(std::span<const StageProfile> profiles,
                                       const AffinityOverrides& overrides) {
  if (profiles.empty()) throw InvalidParameter("no stage profiles to convert");
  std::vector<PipelineStage> out;
  for (const StageProfile& p : profiles) {
    PipelineStage stage;
    stage.name = p.name;
    stage.compute_gflop = p.compute_gflop;
    stage.input_bytes = p.input_bytes;
    stage.output_bytes = p.output_bytes;
    const auto it = overrides.find(p.name);
    stage.affinity = it != overrides.end() ? it->second : default_affinity(p.name);
    validate(stage);
    out.push_back(std::move(stage));
  }
  return out;
}

namespace {

using json_util::json;

json profile_to_json(const StageProfile& p) {
  json j;
  j["name"] = p.name;
  j["wall_time_s"] = p.wall_time_s;
  j["compute_gflop"] = p.compute_gflop;
  j["input_bytes"] = p.input_bytes;
  j["output_bytes"] = p.output_bytes;
  return j;
}

std::uint64_t bytes_field(const json& j, const char* key, const std::string& where) {
  if (!j.contains(key)) json_util::schema_error(where, std::string("missing key '") + key + "'");
  const json& v = j[key];
  if (!v.is_number_unsigned() && !(v.is_number_integer() && v.get<long long>() >= 0))
    json_util::schema_error(where, std::string("'") + key + "' must be a non-negative integer");
  return v.get<std::uint64_t>();
}

StageProfile profile_from_json(const json& j, const std::string& where) {
  json_util::expect_object(j, where);
  json_util::reject_unknown_keys(
      j, where, {"name", "wall_time_s", "compute_gflop", "input_bytes", "output_bytes"});
  StageProfile p;
  p.name = json_util::string(j, "name", where);
  p.wall_time_s = json_util::number(j, "wall_time_s", where);
  p.compute_gflop = json_util::number(j, "compute_gflop", where);
  if (p.wall_time_s < 0.0 || p.compute_gflop < 0.0)
    json_util::schema_error(where, "times and GFLOP must be >= 0");
  p.input_bytes = bytes_field(j, "input_bytes", where);
  p.output_bytes = bytes_field(j, "output_bytes", where);
  return p;
}

}  // namespace

std::string profiles_to_json(const ProfileSet& set) {
  json root;
  root["assumed_host_rate_gflops"] = set.assumed_host_rate_gflops;
  root["repetitions"] = set.repetitions;
  json stages = json::array();
  for (const StageProfile& p : set.stages) stages.push_back(profile_to_json(p));
  root["stages"] = stages;
  if (set.canny) root["canny"] = profile_to_json(*set.canny);
  return root.dump(2) + "\n";
}

ProfileSet parse_profiles_json(std::string_view text) {
  const json root = json_util::parse(text, "profiles");
  const std::string where = "profiles";
  json_util::expect_object(root, where);
  json_util::reject_unknown_keys(root, where,
                                 {"assumed_host_rate_gflops", "repetitions", "stages", "canny"});
  ProfileSet set;
  set.assumed_host_rate_gflops = json_util::number(root, "assumed_host_rate_gflops", where);
  if (!root.contains("repetitions") || !root["repetitions"].is_number_integer())
    json_util::schema_error(where, "'repetitions' must be an integer");
  set.repetitions = root["repetitions"].get<int>();
  if (!root.contains("stages")) json_util::schema_error(where, "missing key 'stages'");
  const json& stages = root["stages"];
  json_util::expect_array(stages, where + ".stages");
  for (std::size_t i = 0; i < stages.size(); ++i)
    set.stages.push_back(profile_from_json(stages[i], where + ".stages[" + std::to_string(i) + "]"));
  if (root.contains("canny")) set.canny = profile_from_json(root["canny"], where + ".canny");
  return set;
}

}  // namespace hybridsim
