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

#include "hybridsim/errors.hpp"
#include "hybridsim/imaging.hpp"
#include "support/fixtures.hpp"

namespace hybridsim {
namespace {

TEST(Canny, ConstantImageHasNoEdges) {
  EXPECT_EQ(count_foreground(canny(GrayImage(30, 30, 0.4), 1.4, 0.4, 90.0)), 0u);
  EXPECT_EQ(count_foreground(canny(GrayImage(), 1.4, 0.4, 90.0)), 0u);
}

TEST(Canny, VerticalStepGivesOnePixelPerRow) {
  GrayImage img(40, 30, 0.2);
  for (int y = 0; y < 30; ++y)
    for (int x = 20; x < 40; ++x) img(x, y) = 0.8;
  const BinaryImage e = canny(img, 1.4, 0.4, 90.0);
  for (int y = 0; y < 30; ++y) {
    int on = 0;
    for (int x = 0; x < 40; ++x)
      if (e(x, y)) {
        ++on;
        EXPECT_TRUE(x == 19 || x == 20) << x;
      }
    EXPECT_EQ(on, 1) << "row " << y;
  }
}

TEST(Canny, OffsetInvariant) {
  const GrayImage a = testing::mask_image(testing::ellipse_mask(60, 50, 30, 25, 18, 12, 0.3), 0.3, 0.7);
  GrayImage b = a;
  for (auto& v : b.pixels()) v += 0.1;
  EXPECT_EQ(canny(a, 1.4, 0.4, 90.0), canny(b, 1.4, 0.4, 90.0));
}

TEST(Canny, DiskOutlineIsNearTheRim) {
  const GrayImage img = testing::mask_image(testing::ellipse_mask(64, 64, 32, 32, 15, 15), 0.2, 0.8);
  const BinaryImage e = canny(img, 1.4, 0.4, 90.0);
  ASSERT_GT(count_foreground(e), 60u);
  for (int y = 0; y < 64; ++y)
    for (int x = 0; x < 64; ++x)
      if (e(x, y)) { EXPECT_NEAR(std::hypot(x - 32.0, y - 32.0), 15.0, 2.0); }
}

TEST(Canny, RejectsBadParameters) {
  const GrayImage img(8, 8, 0.0);
  EXPECT_THROW(canny(img, 1.4, 0.0, 90.0), InvalidParameter);
  EXPECT_THROW(canny(img, 1.4, 1.0, 90.0), InvalidParameter);
  EXPECT_THROW(canny(img, 1.4, 0.4, 100.0), InvalidParameter);
}

}  // namespace
}  // namespace hybridsim
