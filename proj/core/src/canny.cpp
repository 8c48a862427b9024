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

#include <algorithm>
#include <cmath>
#include <vector>

#include "hybridsim/imaging.hpp"

namespace hybridsim {
namespace {

// Gradients are rounded to this grid so that results do not depend on the
// last bits of the smoothed intensities (e.g. after adding a constant).
constexpr double kGradientQuantum = 1e-9;

double quantize(double v) { return std::round(v / kGradientQuantum) * kGradientQuantum; }

}  // namespace

BinaryImage canny(const GrayImage& image, double sigma, double low_fraction,
                  double high_percentile) {
  if (!(low_fraction > 0.0 && low_fraction < 1.0))
    throw InvalidParameter("low threshold fraction must lie in (0, 1)");
  if (!(high_percentile > 0.0 && high_percentile < 100.0))
    throw InvalidParameter("high threshold percentile must lie in (0, 100)");
  const int w = image.width();
  const int h = image.height();
  BinaryImage edges(w, h, 0);
  if (image.empty()) return edges;

  const RealImage smooth = convolve(image, gaussian_kernel(sigma));
  RealImage gx(w, h);
  RealImage gy(w, h);
  RealImage mag(w, h);
  for (int y = 0; y < h; ++y)
    for (int x = 0; x < w; ++x) {
      gx(x, y) = quantize(0.5 * (smooth.clamped(x + 1, y) - smooth.clamped(x - 1, y)));
      gy(x, y) = quantize(0.5 * (smooth.clamped(x, y + 1) - smooth.clamped(x, y - 1)));
      mag(x, y) = quantize(std::hypot(gx(x, y), gy(x, y)));
    }

  // Non-maximum suppression: strictly greater than the neighbor behind,
  // at least the neighbor ahead, so a two-pixel plateau keeps one pixel.
  RealImage thin(w, h, 0.0);
  for (int y = 0; y < h; ++y)
    for (int x = 0; x < w; ++x) {
      const double m = mag(x, y);
      if (m <= 0.0) continue;
      const double ax = std::abs(gx(x, y));
      const double ay = std::abs(gy(x, y));
      int dx = 0;
      int dy = 0;
      // tan(22.5 deg) and tan(67.5 deg) split the four directions.
      if (ay <= ax * 0.41421356237309503) {
        dx = 1;
      } else if (ay >= ax * 2.414213562373095) {
        dy = 1;
      } else {
        dx = 1;
        dy = (gx(x, y) > 0.0) == (gy(x, y) > 0.0) ? 1 : -1;
      }
      const double behind = mag.at_or(x - dx, y - dy, 0.0);
      const double ahead = mag.at_or(x + dx, y + dy, 0.0);
      if (m > behind && m >= ahead) thin(x, y) = m;
    }

  std::vector<double> nonzero;
  for (double m : mag.pixels())
    if (m > 0.0) nonzero.push_back(m);
  if (nonzero.empty()) return edges;
  std::sort(nonzero.begin(), nonzero.end());
  const auto rank = static_cast<std::size_t>(
      std::ceil(high_percentile / 100.0 * static_cast<double>(nonzero.size())));
  const double high = nonzero[std::max<std::size_t>(rank, 1) - 1];
  const double low = low_fraction * high;

  std::vector<PixelCoord> stack;
  for (int y = 0; y < h; ++y)
    for (int x = 0; x < w; ++x)
      if (thin(x, y) >= high && thin(x, y) > 0.0 && !edges(x, y)) {
        edges(x, y) = 1;
        stack.push_back({x, y});
        while (!stack.empty()) {
          const PixelCoord p = stack.back();
          stack.pop_back();
          for (int ny = p.y - 1; ny <= p.y + 1; ++ny)
            for (int nx = p.x - 1; nx <= p.x + 1; ++nx)
              if (edges.contains(nx, ny) && !edges(nx, ny) && thin(nx, ny) >= low &&
                  thin(nx, ny) > 0.0) {
                edges(nx, ny) = 1;
                stack.push_back({nx, ny});
              }
        }
      }
  return edges;
}

}  // namespace hybridsim
