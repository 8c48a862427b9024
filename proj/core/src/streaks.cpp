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

#include "hybridsim/streaks.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

namespace hybridsim {
namespace {

void require(bool ok, const std::string& what) {
  if (!ok) throw InvalidParameter(what);
}

bool in_unit_interval(double v) { return v > 0.0 && v <= 1.0; }

// Background 4-components enclosed by foreground with fewer than `max_area`
// pixels become foreground.
BinaryImage fill_small_holes(const BinaryImage& image, std::size_t max_area) {
  BinaryImage background(image.width(), image.height(), 0);
  for (std::size_t i = 0; i < image.size(); ++i) background.pixels()[i] = !image.pixels()[i];
  const Labeling lab = label_components(background, Connectivity::kFour);
  std::vector<bool> open(lab.areas.size() + 1, false);
  for (int y = 0; y < image.height(); ++y)
    for (int x = 0; x < image.width(); ++x)
      if (x == 0 || y == 0 || x == image.width() - 1 || y == image.height() - 1)
        open[static_cast<std::size_t>(lab.labels(x, y))] = true;
  BinaryImage out = image;
  for (std::size_t i = 0; i < image.size(); ++i) {
    const auto label = static_cast<std::size_t>(lab.labels.pixels()[i]);
    if (label > 0 && !open[label] && lab.areas[label - 1] < max_area) out.pixels()[i] = 1;
  }
  return out;
}

}  // namespace

void validate(const StreakCriteria& c) {
  require(c.min_count >= 1, "min_count must be >= 1");
  require(in_unit_interval(c.len_min_frac), "len_min_frac must lie in (0, 1]");
  require(in_unit_interval(c.len_max_frac), "len_max_frac must lie in (0, 1]");
  require(in_unit_interval(c.border_band_frac), "border_band_frac must lie in (0, 1]");
  require(c.radial_dev_max > 0.0 && c.radial_dev_max <= std::numbers::pi / 2.0,
          "radial_dev_max must lie in (0, pi/2]");
  require(in_unit_interval(c.darkness_factor), "darkness_factor must lie in (0, 1]");
  require(in_unit_interval(c.straightness_min), "straightness_min must lie in (0, 1]");
}

void validate(const FilterParams& p) {
  auto positive = [](const std::optional<double>& v) {
    return !v || (*v > 0.0 && std::isfinite(*v));
  };
  require(positive(p.wavelength), "wavelength must be positive");
  require(positive(p.gabor_sigma), "gabor_sigma must be positive");
  require(positive(p.log_sigma), "log_sigma must be positive");
  require(positive(p.spur_length), "spur_length must be positive");
  require(p.gabor_gamma > 0.0 && std::isfinite(p.gabor_gamma), "gabor_gamma must be positive");
  require(!p.orientations.empty(), "at least one Gabor orientation required");
  for (double o : p.orientations) require(std::isfinite(o), "orientations must be finite");
  require(p.threshold_percentile > 0.0 && p.threshold_percentile < 100.0,
          "threshold_percentile must lie in (0, 100)");
  require(!p.rim_margin || *p.rim_margin >= 0, "rim_margin must be >= 0");
}

ResolvedFilter resolve(const FilterParams& p, const LesionGeometry& geom) {
  validate(p);
  ResolvedFilter r;
  r.wavelength = p.wavelength.value_or(std::max(4.0, geom.minor_axis_len / 40.0));
  r.gabor_sigma = p.gabor_sigma.value_or(0.56 * r.wavelength);
  r.gabor_gamma = p.gabor_gamma;
  r.log_sigma = p.log_sigma.value_or(r.wavelength / 4.0);
  r.rim_margin = p.rim_margin.value_or(static_cast<int>(std::ceil(r.wavelength)));
  r.min_ridge_area = p.min_ridge_area.value_or(
      static_cast<std::size_t>(std::ceil(r.wavelength * r.wavelength)));
  r.spur_length = p.spur_length.value_or(r.wavelength);
  return r;
}

double radial_deviation(Point centroid, Point midpoint, double chord_dx, double chord_dy) {
  const double rx = midpoint.x - centroid.x;
  const double ry = midpoint.y - centroid.y;
  const double norm = std::hypot(rx, ry) * std::hypot(chord_dx, chord_dy);
  if (norm == 0.0) return std::numbers::pi / 2.0;
  const double cosine = std::min(1.0, std::abs(rx * chord_dx + ry * chord_dy) / norm);
  return std::acos(cosine);
}

bool darkness_passes(double segment_mean, double neighborhood_mean, double factor) {
  return segment_mean < factor * neighborhood_mean;
}

double distance_to_background(const BinaryImage& mask, PixelCoord p) {
  double best = std::numeric_limits<double>::infinity();
  for (int r = 1; r <= std::max(mask.width(), mask.height()) + 1; ++r) {
    if (r > best) break;
    for (int dy = -r; dy <= r; ++dy)
      for (int dx = -r; dx <= r; ++dx) {
        if (std::max(std::abs(dx), std::abs(dy)) != r) continue;
        if (!mask.at_or(p.x + dx, p.y + dy, 0)) best = std::min(best, std::hypot(dx, dy));
      }
  }
  return best;
}

SegmentVerdict qualify_segment(const SkeletonSegment& segment, const GrayImage& gray,
                               const BinaryImage& mask, const LesionGeometry& geom,
                               const StreakCriteria& criteria) {
  if (segment.polyline.size() < 2 || !(segment.length > 0.0))
    throw InvariantViolation("streak candidate has zero length");
  for (const PixelCoord& p : segment.polyline)
    if (!gray.contains(p.x, p.y)) throw InvariantViolation("streak candidate leaves the image");

  SegmentVerdict v;
  v.length = segment.length;
  v.midpoint = segment.polyline[segment.polyline.size() / 2];

  const bool inside = mask.at_or(v.midpoint.x, v.midpoint.y, 0) != 0;
  v.border_distance = inside ? distance_to_background(mask, v.midpoint) : 0.0;
  v.location = inside && v.border_distance <= criteria.border_band_frac * geom.minor_axis_len;

  const double cdx = segment.back().x - segment.front().x;
  const double cdy = segment.back().y - segment.front().y;
  v.radial_deviation = radial_deviation(
      geom.centroid, {static_cast<double>(v.midpoint.x), static_cast<double>(v.midpoint.y)}, cdx,
      cdy);
  v.coradial = v.radial_deviation <= criteria.radial_dev_max;

  // Distance of each pixel near the segment to its nearest segment pixel,
  // within a window padded by the outer radius.
  constexpr int kInner = 1;
  constexpr int kOuter = 3;
  int x0 = segment.front().x, x1 = x0, y0 = segment.front().y, y1 = y0;
  for (const PixelCoord& p : segment.polyline) {
    x0 = std::min(x0, p.x);
    x1 = std::max(x1, p.x);
    y0 = std::min(y0, p.y);
    y1 = std::max(y1, p.y);
  }
  x0 -= kOuter;
  y0 -= kOuter;
  x1 += kOuter;
  y1 += kOuter;
  Raster<int> ring(x1 - x0 + 1, y1 - y0 + 1, kOuter + 1);
  for (const PixelCoord& p : segment.polyline)
    for (int dy = -kOuter; dy <= kOuter; ++dy)
      for (int dx = -kOuter; dx <= kOuter; ++dx) {
        const int d2 = dx * dx + dy * dy;
        const int level = d2 == 0 ? 0 : d2 <= kInner * kInner ? kInner : d2 <= kOuter * kOuter ? kOuter : kOuter + 1;
        int& cell = ring(p.x + dx - x0, p.y + dy - y0);
        cell = std::min(cell, level);
      }
  double inner_sum = 0.0, outer_sum = 0.0;
  std::size_t inner_n = 0, outer_n = 0;
  for (int y = y0; y <= y1; ++y)
    for (int x = x0; x <= x1; ++x) {
      if (!mask.at_or(x, y, 0)) continue;
      const int level = ring(x - x0, y - y0);
      if (level <= kInner) {
        inner_sum += gray(x, y);
        ++inner_n;
      } else if (level == kOuter) {
        outer_sum += gray(x, y);
        ++outer_n;
      }
    }
  v.mean_intensity = inner_n ? inner_sum / static_cast<double>(inner_n) : 0.0;
  v.neighborhood_intensity = outer_n ? outer_sum / static_cast<double>(outer_n) : 0.0;
  v.darkness = inner_n > 0 && outer_n > 0 &&
               darkness_passes(v.mean_intensity, v.neighborhood_intensity, criteria.darkness_factor);

  v.straightness = std::hypot(cdx, cdy) / segment.length;
  v.is_branch_attached = segment.is_branch_attached;
  v.shape = !segment.is_branch_attached && v.straightness >= criteria.straightness_min;
  return v;
}

RealImage ridge_response(const GrayImage& rotated, const ResolvedFilter& filter,
                         const FilterParams& params) {
  return gabor_bank(log_filter(rotated, filter.log_sigma), filter.wavelength, filter.gabor_sigma,
                    filter.gabor_gamma, params.orientations);
}

BinaryImage ridge_region(const BinaryImage& rotated_mask, const ResolvedFilter& filter) {
  return erode(rotated_mask, filter.rim_margin);
}

BinaryImage threshold_ridges(const RealImage& response, const BinaryImage& region,
                             const FilterParams& params) {
  BinaryImage positive = region;
  for (std::size_t i = 0; i < positive.size(); ++i)
    positive.pixels()[i] = positive.pixels()[i] && response.pixels()[i] > 0.0;
  return params.threshold == RidgeThreshold::kOtsu
             ? otsu_threshold(response, positive).binary
             : percentile_threshold(response, positive, params.threshold_percentile).binary;
}

BinaryImage clean_ridges(const BinaryImage& ridges, const ResolvedFilter& filter,
                         const FilterParams& params) {
  const BinaryImage closed = erode(dilate(ridges, 1), 1);
  return fill_small_holes(remove_small_components(closed, filter.min_ridge_area),
                          params.max_hole_area);
}

void apply_decision(StreakReport& report, const StreakCriteria& criteria) {
  validate(criteria);
  report.criteria = criteria;
  report.qualifying_count = 0;
  for (SegmentVerdict& v : report.segments) {
    v.coradial = v.radial_deviation <= criteria.radial_dev_max;
    v.darkness = v.neighborhood_intensity > 0.0 &&
                 darkness_passes(v.mean_intensity, v.neighborhood_intensity, criteria.darkness_factor);
    v.location = v.border_distance > 0.0 &&
                 v.border_distance <= criteria.border_band_frac * report.geometry.minor_axis_len;
    v.shape = !v.is_branch_attached && v.straightness >= criteria.straightness_min;
    report.qualifying_count += v.qualifies();
  }
  report.streaks_present = report.qualifying_count >= criteria.min_count;
}

StreakDetection detect_streaks(const GrayImage& image, const StreakCriteria& criteria,
                               const FilterParams& params) {
  validate(criteria);
  validate(params);
  StreakDetection d;
  const BinaryImage mask = segment_lesion(image, params.dark_lesion);
  d.report.source_geometry = lesion_geometry(mask);
  const RotationFrame frame = major_axis_frame(image, d.report.source_geometry);
  d.rotated = rotate_image(image, frame, border_median(image));
  d.rotated_mask = rotate_mask(mask, frame);
  d.report.geometry = lesion_geometry(d.rotated_mask);
  d.report.criteria = criteria;
  d.report.filter = resolve(params, d.report.geometry);

  const BinaryImage region = ridge_region(d.rotated_mask, d.report.filter);
  const RealImage response = ridge_response(d.rotated, d.report.filter, params);
  d.ridges = clean_ridges(threshold_ridges(response, region, params), d.report.filter, params);
  d.skeleton = remove_spurs(thin(d.ridges), d.report.filter.spur_length);
  d.segments = prune_segments(extract_segments(d.skeleton), d.report.geometry,
                              criteria.len_min_frac, criteria.len_max_frac);
  for (std::size_t i = 0; i < d.segments.size(); ++i) {
    SegmentVerdict v =
        qualify_segment(d.segments[i], d.rotated, d.rotated_mask, d.report.geometry, criteria);
    v.id = static_cast<int>(i);
    d.report.segments.push_back(v);
    d.report.qualifying_count += v.qualifies();
  }
  d.report.streaks_present = d.report.qualifying_count >= criteria.min_count;
  return d;
}

RgbImage render_overlay(const StreakDetection& detection) {
  RgbImage out = gray_to_rgb(detection.rotated);
  for (std::size_t i = 0; i < detection.segments.size(); ++i) {
    const bool ok = detection.report.segments[i].qualifies();
    const Rgb color = ok ? Rgb{255, 32, 32} : Rgb{32, 96, 255};
    for (const PixelCoord& p : detection.segments[i].polyline)
      if (out.contains(p.x, p.y)) out(p.x, p.y) = color;
  }
  return out;
}

}  // namespace hybridsim
