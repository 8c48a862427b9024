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
#include <numbers>
#include <vector>

#include "hybridsim/imaging.hpp"

namespace hybridsim {
namespace {

constexpr double kSnap = 1e-9;

double snap(double v) {
  const double r = std::round(v);
  return std::abs(v - r) <= kSnap ? r : v;
}

}  // namespace

BinaryImage segment_lesion(const GrayImage& image, bool dark_lesion) {
  if (image.empty()) throw NoLesionError("empty image");
  const ThresholdResult otsu = otsu_threshold(image);
  if (std::all_of(otsu.binary.pixels().begin(), otsu.binary.pixels().end(),
                  [](std::uint8_t v) { return v == 0; }))
    throw NoLesionError("image has no intensity contrast");
  BinaryImage cls(image.width(), image.height(), 0);
  for (std::size_t i = 0; i < image.size(); ++i)
    cls.pixels()[i] = dark_lesion ? !otsu.binary.pixels()[i] : otsu.binary.pixels()[i];
  if (count_foreground(cls) == 0) throw NoLesionError("lesion class is empty");
  return fill_holes(largest_component(cls));
}

LesionGeometry lesion_geometry(const BinaryImage& mask) {
  double n = 0.0;
  double sx = 0.0;
  double sy = 0.0;
  for (int y = 0; y < mask.height(); ++y)
    for (int x = 0; x < mask.width(); ++x)
      if (mask(x, y)) {
        n += 1.0;
        sx += x;
        sy += y;
      }
  if (n == 0.0) throw NoLesionError("lesion mask is empty");
  LesionGeometry g;
  g.area = n;
  g.centroid = {sx / n, sy / n};
  double mu20 = 0.0;
  double mu02 = 0.0;
  double mu11 = 0.0;
  for (int y = 0; y < mask.height(); ++y)
    for (int x = 0; x < mask.width(); ++x)
      if (mask(x, y)) {
        const double dx = x - g.centroid.x;
        const double dy = y - g.centroid.y;
        mu20 += dx * dx;
        mu02 += dy * dy;
        mu11 += dx * dy;
      }
  mu20 = mu20 / n + 1.0 / 12.0;
  mu02 = mu02 / n + 1.0 / 12.0;
  mu11 /= n;
  const double half_trace = 0.5 * (mu20 + mu02);
  const double spread = std::hypot(0.5 * (mu20 - mu02), mu11);
  g.major_axis_len = 4.0 * std::sqrt(half_trace + spread);
  g.minor_axis_len = 4.0 * std::sqrt(std::max(half_trace - spread, 0.0));
  if (spread > 1e-9 * half_trace) {
    g.orientation = 0.5 * std::atan2(2.0 * mu11, mu20 - mu02);
    if (g.orientation <= -std::numbers::pi / 2.0) g.orientation = std::numbers::pi / 2.0;
  }
  return g;
}

Point RotationFrame::to_dest(Point p) const {
  const double c = std::cos(angle);
  const double s = std::sin(angle);
  const double dx = p.x - center.x;
  const double dy = p.y - center.y;
  return {c * dx - s * dy + center.x + offset_x, s * dx + c * dy + center.y + offset_y};
}

Point RotationFrame::to_source(Point p) const {
  const double c = std::cos(angle);
  const double s = std::sin(angle);
  const double dx = p.x - offset_x - center.x;
  const double dy = p.y - offset_y - center.y;
  return {c * dx + s * dy + center.x, -s * dx + c * dy + center.y};
}

RotationFrame rotation_frame(int width, int height, Point center, double angle) {
  if (width <= 0 || height <= 0) throw InvalidParameter("cannot rotate an empty raster");
  if (!std::isfinite(angle)) throw InvalidParameter("rotation angle must be finite");
  RotationFrame f{angle, center, 0, 0, 0, 0};
  double min_x = 0.0, max_x = 0.0, min_y = 0.0, max_y = 0.0;
  const Point corners[4] = {{0.0, 0.0},
                            {width - 1.0, 0.0},
                            {0.0, height - 1.0},
                            {width - 1.0, height - 1.0}};
  for (int i = 0; i < 4; ++i) {
    const Point q = f.to_dest(corners[i]);
    min_x = i ? std::min(min_x, q.x) : q.x;
    max_x = i ? std::max(max_x, q.x) : q.x;
    min_y = i ? std::min(min_y, q.y) : q.y;
    max_y = i ? std::max(max_y, q.y) : q.y;
  }
  const int x0 = static_cast<int>(std::floor(min_x + kSnap));
  const int y0 = static_cast<int>(std::floor(min_y + kSnap));
  const int x1 = static_cast<int>(std::ceil(max_x - kSnap));
  const int y1 = static_cast<int>(std::ceil(max_y - kSnap));
  f.offset_x = -x0;
  f.offset_y = -y0;
  f.width = x1 - x0 + 1;
  f.height = y1 - y0 + 1;
  return f;
}

namespace {

// Returns false when the sample lies outside the source.
template <typename T>
bool bilinear(const Raster<T>& src, Point p, double& out) {
  const double x = snap(p.x);
  const double y = snap(p.y);
  if (x < 0.0 || y < 0.0 || x > src.width() - 1.0 || y > src.height() - 1.0) return false;
  const int x0 = static_cast<int>(std::floor(x));
  const int y0 = static_cast<int>(std::floor(y));
  const double fx = x - x0;
  const double fy = y - y0;
  const int x1 = fx > 0.0 ? x0 + 1 : x0;
  const int y1 = fy > 0.0 ? y0 + 1 : y0;
  const double top = (1.0 - fx) * src(x0, y0) + fx * src(x1, y0);
  const double bottom = (1.0 - fx) * src(x0, y1) + fx * src(x1, y1);
  out = (1.0 - fy) * top + fy * bottom;
  return true;
}

}  // namespace

GrayImage rotate_image(const GrayImage& image, const RotationFrame& frame, double fill) {
  GrayImage out(frame.width, frame.height, fill);
  for (int y = 0; y < frame.height; ++y)
    for (int x = 0; x < frame.width; ++x) {
      double v = 0.0;
      if (bilinear(image, frame.to_source({static_cast<double>(x), static_cast<double>(y)}), v))
        out(x, y) = v;
    }
  return out;
}

BinaryImage rotate_mask(const BinaryImage& mask, const RotationFrame& frame) {
  BinaryImage out(frame.width, frame.height, 0);
  for (int y = 0; y < frame.height; ++y)
    for (int x = 0; x < frame.width; ++x) {
      double v = 0.0;
      if (bilinear(mask, frame.to_source({static_cast<double>(x), static_cast<double>(y)}), v))
        out(x, y) = v >= 0.5;
    }
  return out;
}

double border_median(const GrayImage& image) {
  if (image.empty()) throw InvalidParameter("empty image has no border");
  std::vector<double> ring;
  const int w = image.width();
  const int h = image.height();
  for (int y = 0; y < h; ++y)
    for (int x = 0; x < w; ++x)
      if (x == 0 || y == 0 || x == w - 1 || y == h - 1) ring.push_back(image(x, y));
  const std::size_t mid = (ring.size() - 1) / 2;
  std::nth_element(ring.begin(), ring.begin() + static_cast<std::ptrdiff_t>(mid), ring.end());
  return ring[mid];
}

RotationFrame major_axis_frame(const GrayImage& image, const LesionGeometry& geom) {
  return rotation_frame(image.width(), image.height(), geom.centroid, -geom.orientation);
}

GrayImage rotate_to_major_axis(const GrayImage& image, const LesionGeometry& geom) {
  return rotate_image(image, major_axis_frame(image, geom), border_median(image));
}

}  // namespace hybridsim
