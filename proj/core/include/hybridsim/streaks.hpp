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

#ifndef HYBRIDSIM_STREAKS_HPP_
#define HYBRIDSIM_STREAKS_HPP_

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "hybridsim/imaging.hpp"
#include "hybridsim/pnm.hpp"
#include "hybridsim/raster.hpp"
#include "hybridsim/thinning.hpp"

namespace hybridsim {

struct StreakCriteria {
  int min_count = 3;
  double len_min_frac = 0.01;        // of the major axis
  double len_max_frac = 1.0 / 3.0;   // of the minor axis
  double border_band_frac = 1.0 / 3.0;  // of the minor axis
  double radial_dev_max = 0.5235987755982988;  // 30 degrees
  double darkness_factor = 0.9;
  double straightness_min = 0.90;

  friend bool operator==(const StreakCriteria&, const StreakCriteria&) = default;
};

void validate(const StreakCriteria& criteria);

enum class RidgeThreshold { kOtsu, kPercentile };

// Unset optionals are derived from the rotated lesion geometry.
struct FilterParams {
  std::optional<double> wavelength;   // max(4, minor / 40)
  std::optional<double> gabor_sigma;  // 0.56 * wavelength
  // Envelope aspect ratio. 1 keeps streaks that fall between two of the four
  // bank orientations detectable; 0.5 narrows the angular acceptance enough
  // to lose them.
  double gabor_gamma = 1.0;
  std::optional<double> log_sigma;    // wavelength / 4
  std::vector<double> orientations = default_gabor_orientations();
  RidgeThreshold threshold = RidgeThreshold::kOtsu;
  double threshold_percentile = 90.0;
  bool dark_lesion = true;
  // Ridge search region is the lesion mask eroded by this many pixels
  // (default: wavelength rounded up), which drops the response of the
  // lesion's own edge.
  std::optional<int> rim_margin;
  // Ridge components below this many pixels are dropped (default:
  // wavelength squared, rounded up).
  std::optional<std::size_t> min_ridge_area;
  std::size_t max_hole_area = 4;
  // Endpoint-to-branch spurs shorter than this are cut (default: wavelength).
  std::optional<double> spur_length;

  friend bool operator==(const FilterParams&, const FilterParams&) = default;
};

void validate(const FilterParams& params);

struct ResolvedFilter {
  double wavelength = 0.0;
  double gabor_sigma = 0.0;
  double gabor_gamma = 0.0;
  double log_sigma = 0.0;
  int rim_margin = 0;
  std::size_t min_ridge_area = 0;
  double spur_length = 0.0;
};

ResolvedFilter resolve(const FilterParams& params, const LesionGeometry& geom);

// Undirected angle in [0, pi/2] between the chord and the ray from the
// centroid to the midpoint; pi/2 when either vector is zero.
double radial_deviation(Point centroid, Point midpoint, double chord_dx, double chord_dy);

bool darkness_passes(double segment_mean, double neighborhood_mean, double factor);

// Distance from `p` to the nearest pixel outside `mask` (the raster exterior
// counts as outside).
double distance_to_background(const BinaryImage& mask, PixelCoord p);

struct SegmentVerdict {
  int id = 0;
  double length = 0.0;
  PixelCoord midpoint;
  double border_distance = 0.0;
  double radial_deviation = 0.0;
  double straightness = 0.0;
  double mean_intensity = 0.0;
  double neighborhood_intensity = 0.0;
  bool is_branch_attached = false;
  bool location = false;
  bool coradial = false;
  bool darkness = false;
  bool shape = false;

  bool qualifies() const { return location && coradial && darkness && shape; }
  friend bool operator==(const SegmentVerdict&, const SegmentVerdict&) = default;
};

// The midpoint is the middle polyline pixel. Darkness compares the mean over
// the segment dilated by 1 with the mean over the ring between dilation
// radii 1 and 3, both restricted to the mask. Throws InvariantViolation for a
// segment of zero length.
SegmentVerdict qualify_segment(const SkeletonSegment& segment, const GrayImage& gray,
                               const BinaryImage& mask, const LesionGeometry& geom,
                               const StreakCriteria& criteria);

struct StreakReport {
  LesionGeometry source_geometry;  // in the input image
  LesionGeometry geometry;         // re-measured after rotation
  StreakCriteria criteria;
  ResolvedFilter filter;
  std::vector<SegmentVerdict> segments;
  int qualifying_count = 0;
  bool streaks_present = false;
};

struct StreakDetection {
  StreakReport report;
  GrayImage rotated;
  BinaryImage rotated_mask;
  BinaryImage ridges;
  Skeleton skeleton;
  std::vector<SkeletonSegment> segments;  // pruned, parallel to report.segments
};

// The ridge stages, kept separate so that profiling can time them one by one.
RealImage ridge_response(const GrayImage& rotated, const ResolvedFilter& filter,
                         const FilterParams& params);
// Lesion mask eroded by the rim margin; the ridge threshold is computed here.
BinaryImage ridge_region(const BinaryImage& rotated_mask, const ResolvedFilter& filter);
// Otsu (or percentile) over the positive responses inside `region`.
BinaryImage threshold_ridges(const RealImage& response, const BinaryImage& region,
                             const FilterParams& params);
// Radius-1 closing, removal of small components, filling of tiny holes.
BinaryImage clean_ridges(const BinaryImage& ridges, const ResolvedFilter& filter,
                         const FilterParams& params);

// Segment, measure, rotate image and mask to the major axis, re-measure,
// LoG, Gabor bank, threshold inside the lesion, thin, cut spurs, extract,
// prune and qualify. Throws NoLesionError when no lesion is found.
StreakDetection detect_streaks(const GrayImage& image, const StreakCriteria& criteria = {},
                               const FilterParams& params = {});

// Recounts qualifying segments under `criteria` (which must share the length
// bounds used for pruning).
void apply_decision(StreakReport& report, const StreakCriteria& criteria);

struct SynthParams {
  int width = 256;
  int height = 256;
  double semi_major = 100.0;
  double aspect = 0.75;   // semi-minor / semi-major
  int n_streaks = 5;
  double streak_len = 30.0;
  double streak_width = 2.5;
  double streak_margin = 1.0;  // gap between a streak's outer end and the lesion edge
  double phase = 0.3;          // angle of the first streak, radians
  double lesion_intensity = 0.5;
  double streak_intensity = 0.25;
  double skin_intensity = 0.85;
  double noise_sigma = 0.02;
  std::uint64_t seed = 1;
};

void validate(const SynthParams& params);

// Bright field, darker axis-aligned elliptical lesion at the canvas center,
// `n_streaks` dark radial bars at evenly spaced angles ending just inside the
// lesion edge, plus Gaussian noise clipped at 3 sigma. Output is clamped to
// [0, 1] and depends only on `params`.
GrayImage synth_mole(const SynthParams& params);

struct DetectionConfig {
  StreakCriteria criteria;
  FilterParams filter;
};

std::string criteria_to_json(const DetectionConfig& config);
// Keys absent from the document keep the values already in `base`.
DetectionConfig parse_criteria_json(std::string_view text, const DetectionConfig& base = {});

std::string report_to_json(const StreakReport& report);

// Rotated grayscale with qualifying segments in red and rejected ones in blue.
RgbImage render_overlay(const StreakDetection& detection);

}  // namespace hybridsim

#endif  // HYBRIDSIM_STREAKS_HPP_
