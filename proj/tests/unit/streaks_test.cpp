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

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "hybridsim/errors.hpp"
#include "hybridsim/streaks.hpp"
#include "support/oracles.hpp"

namespace hybridsim {
namespace {

constexpr double kPi = std::numbers::pi;

GrayImage fixture(int n, std::uint64_t seed) {
  SynthParams p;
  p.n_streaks = n;
  p.seed = seed;
  return synth_mole(p);
}

TEST(Synth, PlainLesionRespectsNoiseBound) {
  SynthParams p;
  p.n_streaks = 0;
  const GrayImage img = synth_mole(p);
  const double cx = (p.width - 1) / 2.0, cy = (p.height - 1) / 2.0;
  const double a = p.semi_major, b = a * p.aspect;
  for (int y = 0; y < p.height; ++y)
    for (int x = 0; x < p.width; ++x) {
      const double dx = (x - cx) / a, dy = (y - cy) / b;
      if (dx * dx + dy * dy <= 1.0) {
        ASSERT_GE(img(x, y), p.lesion_intensity - 3 * p.noise_sigma - 1e-12);
      }
      ASSERT_GE(img(x, y), 0.0);
      ASSERT_LE(img(x, y), 1.0);
    }
}

TEST(Synth, SeedDeterminism) {
  EXPECT_EQ(fixture(5, 9), fixture(5, 9));
  EXPECT_NE(fixture(5, 9), fixture(5, 10));
}

TEST(Synth, PaintsTheRequestedNumberOfStreaks) {
  for (int n : {0, 1, 2, 5, 6, 7}) {
    SynthParams p;
    p.n_streaks = n;
    const GrayImage img = synth_mole(p);
    const double dark = (p.streak_intensity + p.lesion_intensity) / 2.0;
    EXPECT_EQ(oracle::angular_dark_clusters(img, (p.width - 1) / 2.0, (p.height - 1) / 2.0,
                                            p.semi_major, p.semi_major * p.aspect, 0.75, 0.95,
                                            dark),
              n);
  }
}

TEST(Synth, RejectsBadParameters) {
  auto bad = [](auto tweak) {
    SynthParams p;
    tweak(p);
    return p;
  };
  EXPECT_THROW(validate(bad([](SynthParams& p) { p.streak_intensity = 0.6; })), InvalidParameter);
  EXPECT_THROW(validate(bad([](SynthParams& p) { p.semi_major = 200.0; })), InvalidParameter);
  EXPECT_THROW(validate(bad([](SynthParams& p) { p.streak_len = 80.0; })), InvalidParameter);
  EXPECT_THROW(validate(bad([](SynthParams& p) { p.n_streaks = -1; })), InvalidParameter);
  EXPECT_THROW(validate(bad([](SynthParams& p) { p.noise_sigma = -0.1; })), InvalidParameter);
  EXPECT_THROW(synth_mole(bad([](SynthParams& p) { p.width = 0; })), InvalidParameter);
  EXPECT_NO_THROW(validate(SynthParams{}));
}

TEST(Qualify, RadialDeviationExamples) {
  EXPECT_DOUBLE_EQ(radial_deviation({0, 0}, {100, 0}, 1, 0), 0.0);
  EXPECT_DOUBLE_EQ(radial_deviation({0, 0}, {100, 0}, 0, 1), kPi / 2);
  EXPECT_NEAR(radial_deviation({0, 0}, {100, 0}, -1, 0), 0.0, 1e-12);
  EXPECT_NEAR(radial_deviation({0, 0}, {10, 10}, 1, 0), kPi / 4, 1e-12);
}

TEST(Qualify, DarknessExample) {
  EXPECT_TRUE(darkness_passes(0.30, 0.50, 0.9));
  EXPECT_FALSE(darkness_passes(0.45, 0.50, 0.9));
  EXPECT_FALSE(darkness_passes(0.46, 0.50, 0.9));
}

TEST(Qualify, SyntheticRadialBar) {
  // Disk lesion of radius 40 with a dark radial bar near its right edge.
  const int n = 101;
  BinaryImage mask(n, n, 0);
  GrayImage gray(n, n, 0.9);
  for (int y = 0; y < n; ++y)
    for (int x = 0; x < n; ++x)
      if (std::hypot(x - 50.0, y - 50.0) <= 40.0) {
        mask(x, y) = 1;
        gray(x, y) = 0.5;
      }
  for (int x = 70; x <= 84; ++x) gray(x, 50) = 0.2;
  SkeletonSegment seg;
  for (int x = 70; x <= 84; ++x) seg.polyline.push_back({x, 50});
  seg.length = 14.0;
  const LesionGeometry geom = lesion_geometry(mask);
  const SegmentVerdict v = qualify_segment(seg, gray, mask, geom, StreakCriteria{});
  EXPECT_NEAR(v.radial_deviation, 0.0, 1e-9);
  EXPECT_EQ(v.midpoint, (PixelCoord{77, 50}));
  EXPECT_TRUE(v.location);
  EXPECT_TRUE(v.coradial);
  EXPECT_TRUE(v.darkness);
  EXPECT_TRUE(v.shape);
  EXPECT_DOUBLE_EQ(v.straightness, 1.0);
  EXPECT_TRUE(v.qualifies());

  SkeletonSegment tangential;
  for (int y = 43; y <= 57; ++y) tangential.polyline.push_back({77, y});
  tangential.length = 14.0;
  const SegmentVerdict t = qualify_segment(tangential, gray, mask, geom, StreakCriteria{});
  EXPECT_FALSE(t.coradial);
  EXPECT_FALSE(t.darkness);

  SkeletonSegment dot;
  dot.polyline = {{50, 50}};
  EXPECT_THROW(qualify_segment(dot, gray, mask, geom, StreakCriteria{}), InvariantViolation);
}

TEST(Criteria, Validation) {
  StreakCriteria c;
  EXPECT_NO_THROW(validate(c));
  c.min_count = 0;
  EXPECT_THROW(validate(c), InvalidParameter);
  c = {};
  c.darkness_factor = 1.5;
  EXPECT_THROW(validate(c), InvalidParameter);
  c = {};
  c.straightness_min = 0.0;
  EXPECT_THROW(validate(c), InvalidParameter);
}

TEST(Criteria, JsonRoundTrip) {
  DetectionConfig cfg;
  cfg.criteria.min_count = 4;
  cfg.criteria.radial_dev_max = 0.4;
  cfg.filter.wavelength = 6.5;
  cfg.filter.threshold = RidgeThreshold::kPercentile;
  cfg.filter.rim_margin = 3;
  cfg.filter.orientations = {0.0, 1.0};
  EXPECT_EQ(parse_criteria_json(criteria_to_json(cfg)).criteria, cfg.criteria);
  EXPECT_EQ(parse_criteria_json(criteria_to_json(cfg)).filter, cfg.filter);
  EXPECT_EQ(parse_criteria_json("{}").criteria, StreakCriteria{});
  EXPECT_EQ(parse_criteria_json(R"({"min_count": 5})").criteria.min_count, 5);
  EXPECT_THROW(parse_criteria_json(R"({"min_cnt": 5})"), ParseError);
  EXPECT_THROW(parse_criteria_json("{"), ParseError);
  EXPECT_THROW(parse_criteria_json(R"({"min_count": 0})"), ConfigError);
}

TEST(Detect, FiveStreaksPresentZeroAbsent) {
  const StreakDetection five = detect_streaks(fixture(5, 1));
  EXPECT_TRUE(five.report.streaks_present);
  EXPECT_GE(five.report.qualifying_count, 3);
  EXPECT_LE(five.report.qualifying_count, 5);
  const StreakDetection none = detect_streaks(fixture(0, 1));
  EXPECT_FALSE(none.report.streaks_present);
  EXPECT_EQ(five.segments.size(), five.report.segments.size());
}

TEST(Detect, FlatImageHasNoLesion) {
  EXPECT_THROW(detect_streaks(GrayImage(64, 64, 0.5)), NoLesionError);
}

TEST(Detect, DecisionFlipsAtQualifyingCount) {
  for (int n : {0, 2, 5}) {
    StreakReport r = detect_streaks(fixture(n, 3)).report;
    StreakCriteria c = r.criteria;
    c.min_count = r.qualifying_count + 1;
    apply_decision(r, c);
    EXPECT_FALSE(r.streaks_present);
    if (r.qualifying_count >= 1) {
      c.min_count = r.qualifying_count;
      apply_decision(r, c);
      EXPECT_TRUE(r.streaks_present);
    }
  }
}

TEST(Detect, RelaxingCriteriaNeverLosesSegments) {
  for (int n : {2, 5, 6}) {
    const GrayImage img = fixture(n, 4);
    StreakCriteria strict;
    strict.radial_dev_max = 10.0 * kPi / 180.0;
    strict.darkness_factor = 0.6;
    int prev = detect_streaks(img, strict).report.qualifying_count;
    StreakReport r = detect_streaks(img, strict).report;
    for (double deg : {20.0, 30.0, 45.0, 90.0})
      for (double f : {0.7, 0.9, 1.0}) {
        StreakCriteria c = strict;
        c.radial_dev_max = deg * kPi / 180.0;
        c.darkness_factor = f;
        apply_decision(r, c);
        EXPECT_GE(r.qualifying_count, prev) << deg << " " << f;
        prev = r.qualifying_count;
      }
  }
}

TEST(Detect, ContrastScalingKeepsDecision) {
  for (int n : {0, 5, 6}) {
    const GrayImage img = fixture(n, 5);
    const bool base = detect_streaks(img).report.streaks_present;
    for (double c : {0.5, 0.75}) {
      GrayImage scaled = img;
      for (auto& v : scaled.pixels()) v = std::clamp(v * c, 0.0, 1.0);
      EXPECT_EQ(detect_streaks(scaled).report.streaks_present, base) << n << " " << c;
    }
  }
}

TEST(Detect, ReportBytesAreDeterministic) {
  const GrayImage img = fixture(5, 6);
  EXPECT_EQ(report_to_json(detect_streaks(img).report),
            report_to_json(detect_streaks(img).report));
}

TEST(Detect, RotatedFixtureAgrees) {
  const GrayImage img = fixture(5, 1);
  const int base = detect_streaks(img).report.qualifying_count;
  const RotationFrame f = rotation_frame(img.width(), img.height(),
                                         {(img.width() - 1) / 2.0, (img.height() - 1) / 2.0},
                                         37.0 * kPi / 180.0);
  const int rotated = detect_streaks(rotate_image(img, f, border_median(img))).report.qualifying_count;
  EXPECT_LE(std::abs(rotated - base), 1);
}

}  // namespace
}  // namespace hybridsim
