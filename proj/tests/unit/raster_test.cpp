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

#include "hybridsim/raster.hpp"

#include <gtest/gtest.h>

#include "hybridsim/errors.hpp"
#include "support/fixtures.hpp"
#include "support/oracles.hpp"

namespace hybridsim {
namespace {

BinaryImage from_rows(const std::vector<std::string>& rows) {
  BinaryImage m(static_cast<int>(rows[0].size()), static_cast<int>(rows.size()), 0);
  for (int y = 0; y < m.height(); ++y)
    for (int x = 0; x < m.width(); ++x) m(x, y) = rows[y][x] == '#';
  return m;
}

TEST(Raster, DimensionChecks) {
  EXPECT_THROW(BinaryImage(-1, 2), InvalidParameter);
  EXPECT_THROW(GrayImage(2, 2, std::vector<double>(3)), InvalidParameter);
  const GrayImage g(3, 2, 0.5);
  EXPECT_EQ(g.size(), 6u);
  EXPECT_DOUBLE_EQ(g.clamped(-5, 9), 0.5);
}

TEST(Labeling, ScanOrderLabelsAndConnectivity) {
  const BinaryImage m = from_rows({"#..#", ".#..", "....", "##.#"});
  EXPECT_EQ(count_components(m, Connectivity::kEight), 4u);
  EXPECT_EQ(count_components(m, Connectivity::kFour), 5u);
  const Labeling l = label_components(m, Connectivity::kEight);
  EXPECT_EQ(l.labels(0, 0), 1);
  EXPECT_EQ(l.labels(1, 1), 1);
  EXPECT_EQ(l.labels(3, 0), 2);
  EXPECT_EQ(l.labels(0, 3), 3);
  EXPECT_EQ(l.labels(3, 3), 4);
  EXPECT_EQ(l.areas, (std::vector<std::size_t>{2, 1, 2, 1}));
}

TEST(Labeling, MatchesFloodFillOracle) {
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    const BinaryImage m = testing::random_blob(seed);
    EXPECT_EQ(count_components(m, Connectivity::kEight),
              static_cast<std::size_t>(oracle::components8(m)));
    std::size_t n = 0;
    for (auto p : m.pixels()) n += p != 0;
    EXPECT_EQ(count_foreground(m), n);
  }
}

TEST(FillHoles, FillsEnclosedBackgroundOnly) {
  const BinaryImage ring = from_rows({"#####", "#...#", "#.#.#", "#...#", "#####", "....."});
  const BinaryImage filled = fill_holes(ring);
  for (int y = 0; y < 5; ++y)
    for (int x = 0; x < 5; ++x) EXPECT_EQ(filled(x, y), 1);
  EXPECT_EQ(filled(0, 5), 0);
  const BinaryImage open = from_rows({"###", "#..", "###"});
  EXPECT_EQ(fill_holes(open), open);
}

TEST(LargestComponent, KeepsBiggestFirstOnTies) {
  const BinaryImage m = from_rows({"##..#", "##..#", "....."});
  const BinaryImage big = largest_component(m);
  EXPECT_EQ(count_foreground(big), 4u);
  const BinaryImage tie = largest_component(from_rows({"#.#"}));
  EXPECT_EQ(tie(0, 0), 1);
  EXPECT_EQ(tie(2, 0), 0);
}

TEST(RemoveSmallComponents, DropsBelowThreshold) {
  const BinaryImage m = from_rows({"##..#", "##...", "....#"});
  const BinaryImage r = remove_small_components(m, 2);
  EXPECT_EQ(count_foreground(r), 4u);
  EXPECT_EQ(remove_small_components(m, 0), m);
}

TEST(Morphology, DiskStructuringElement) {
  BinaryImage dot(9, 9, 0);
  dot(4, 4) = 1;
  const BinaryImage d2 = dilate(dot, 2);
  EXPECT_EQ(count_foreground(d2), 13u);  // |dx|^2 + |dy|^2 <= 4
  EXPECT_EQ(erode(d2, 2), dot);
  EXPECT_EQ(dilate(dot, 0), dot);
  EXPECT_THROW(dilate(dot, -1), InvalidParameter);
  const BinaryImage full(5, 5, 1);
  const BinaryImage e = erode(full, 1);
  EXPECT_EQ(e(0, 2), 0);  // the exterior counts as background
  EXPECT_EQ(e(2, 2), 1);
}

TEST(RenderMask, ForegroundDark) {
  const GrayImage g = render_mask(from_rows({"#."}));
  EXPECT_DOUBLE_EQ(g(0, 0), 0.0);
  EXPECT_DOUBLE_EQ(g(1, 0), 1.0);
}

}  // namespace
}  // namespace hybridsim
