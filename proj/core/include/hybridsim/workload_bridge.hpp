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

#ifndef HYBRIDSIM_WORKLOAD_BRIDGE_HPP_
#define HYBRIDSIM_WORKLOAD_BRIDGE_HPP_

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "hybridsim/scheduler.hpp"
#include "hybridsim/streaks.hpp"

namespace hybridsim {

// Measured cost of one stage of the streak pipeline on the profiling host.
struct StageProfile {
  std::string name;
  double wall_time_s = 0.0;    // median over repetitions
  double compute_gflop = 0.0;  // wall_time_s * assumed host rate
  std::uint64_t input_bytes = 0;
  std::uint64_t output_bytes = 0;

  friend bool operator==(const StageProfile&, const StageProfile&) = default;
};

struct ProfileSet {
  double assumed_host_rate_gflops = 0.0;
  int repetitions = 0;
  std::vector<StageProfile> stages;
  std::optional<StageProfile> canny;  // standalone, not part of the chain
};

// Rate credited to the single-threaded reference implementation when
// converting measured wall time into work. Calibrated on a Release build so
// that, at a 10 GB/s link, convolution stages offload and the cheap
// reduction stages stay on the host.
inline constexpr double kDefaultHostRateGflops = 55.0;
inline constexpr int kMinRepetitions = 3;

// Real rasters count 4 bytes per pixel, binary rasters one bit per pixel.
std::uint64_t real_raster_bytes(int width, int height);
std::uint64_t binary_raster_bytes(int width, int height);

// Stage names in pipeline order.
std::span<const std::string_view> pipeline_stage_names();

// Times each stage of detect_streaks on `image`. Bytes follow the data that
// flows from one stage to the next: segment turns the image into image +
// mask, geometry passes both through, rotate emits the rotated image, LoG and
// Gabor map it to a response of the same size, threshold and thin emit
// binary rasters, and the last stage emits 64 bytes per verdict. The rotated
// mask and lesion geometry stay in host memory and are not counted. Every
// stage's output bytes equal the next stage's input bytes.
std::vector<StageProfile> profile_pipeline(const GrayImage& image,
                                           const DetectionConfig& config,
                                           double assumed_host_rate_gflops,
                                           int repetitions);

inline constexpr double kProfileCannySigma = 1.4;
inline constexpr double kProfileCannyLow = 0.4;
inline constexpr double kProfileCannyHighPercentile = 90.0;

// Canny on the input image: image in, binary edge map out.
StageProfile profile_canny(const GrayImage& image, double assumed_host_rate_gflops,
                           int repetitions);

// True for the convolution-dominated stages (LoG, Gabor, Canny).
bool is_convolution_stage(std::string_view name);
std::map<DeviceKind, double> default_affinity(std::string_view stage_name);

using AffinityOverrides = std::map<std::string, std::map<DeviceKind, double>>;

// One PipelineStage per profile with the same name, GFLOP and byte counts;
// affinities come from `overrides` where given, else default_affinity.
std::vector<PipelineStage> to_pipeline(std::span<const StageProfile> profiles,
                                       const AffinityOverrides& overrides = {});

std::string profiles_to_json(const ProfileSet& set);
ProfileSet parse_profiles_json(std::string_view text);

}  // namespace hybridsim

#endif  // HYBRIDSIM_WORKLOAD_BRIDGE_HPP_
