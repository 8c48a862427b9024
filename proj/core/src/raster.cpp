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

#include <vector>

namespace hybridsim {
namespace {

constexpr int kDx8[8] = {0, 1, 0, -1, 1, 1, -1, -1};
constexpr int kDy8[8] = {-1, 0, 1, 0, -1, 1, 1, -1};

std::vector<PixelCoord> disk_offsets(int radius) {
  std::vector<PixelCoord> out;
  for (int dy = -radius; dy <= radius; ++dy)
    for (int dx = -radius; dx <= radius; ++dx)
      if (dx * dx + dy * dy <= radius * radius) out.push_back({dx, dy});
  return out;
}

}  // namespace

std::size_t count_foreground(const BinaryImage& image) {
  std::size_t n = 0;
  for (std::uint8_t v : image.pixels()) n += v != 0;
  return n;
}

Labeling label_components(const BinaryImage& image, Connectivity connectivity) {
  const int neighbors = connectivity == Connectivity::kEight ? 8 : 4;
  Labeling out{Raster<int>(image.width(), image.height(), 0), {}};
  std::vector<PixelCoord> stack;
  for (int y = 0; y < image.height(); ++y) {
    for (int x = 0; x < image.width(); ++x) {
      if (!image(x, y) || out.labels(x, y)) continue;
      const int label = static_cast<int>(out.areas.size()) + 1;
      std::size_t area = 0;
      out.labels(x, y) = label;
      stack.push_back({x, y});
      while (!stack.empty()) {
        const PixelCoord p = stack.back();
        stack.pop_back();
        ++area;
        for (int k = 0; k < neighbors; ++k) {
          const int nx = p.x + kDx8[k];
          const int ny = p.y + kDy8[k];
          if (image.contains(nx, ny) && image(nx, ny) && !out.labels(nx, ny)) {
            out.labels(nx, ny) = label;
            stack.push_back({nx, ny});
          }
        }
      }
      out.areas.push_back(area);
    }
  }
  return out;
}

std::size_t count_components(const BinaryImage& image, Connectivity connectivity) {
  return label_components(image, connectivity).areas.size();
}

BinaryImage fill_holes(const BinaryImage& image) {
  BinaryImage background(image.width(), image.height(), 0);
  for (std::size_t i = 0; i < image.size(); ++i)
    background.pixels()[i] = image.pixels()[i] ? 0 : 1;
  const Labeling bg = label_components(background, Connectivity::kFour);
  std::vector<bool> touches(bg.areas.size() + 1, false);
  for (int x = 0; x < image.width(); ++x) {
    touches[static_cast<std::size_t>(bg.labels(x, 0))] = true;
    touches[static_cast<std::size_t>(bg.labels(x, image.height() - 1))] = true;
  }
  for (int y = 0; y < image.height(); ++y) {
    touches[static_cast<std::size_t>(bg.labels(0, y))] = true;
    touches[static_cast<std::size_t>(bg.labels(image.width() - 1, y))] = true;
  }
  BinaryImage out = image;
  for (std::size_t i = 0; i < image.size(); ++i) {
    const int label = bg.labels.pixels()[i];
    if (label > 0 && !touches[static_cast<std::size_t>(label)]) out.pixels()[i] = 1;
  }
  return out;
}

BinaryImage largest_component(const BinaryImage& image) {
  const Labeling lab = label_components(image, Connectivity::kEight);
  BinaryImage out(image.width(), image.height(), 0);
  if (lab.areas.empty()) return out;
  std::size_t best = 0;
  for (std::size_t k = 1; k < lab.areas.size(); ++k)
    if (lab.areas[k] > lab.areas[best]) best = k;
  const int keep = static_cast<int>(best) + 1;
  for (std::size_t i = 0; i < image.size(); ++i)
    out.pixels()[i] = lab.labels.pixels()[i] == keep;
  return out;
}

BinaryImage remove_small_components(const BinaryImage& image, std::size_t min_area) {
  const Labeling lab = label_components(image, Connectivity::kEight);
  BinaryImage out(image.width(), image.height(), 0);
  for (std::size_t i = 0; i < image.size(); ++i) {
    const int label = lab.labels.pixels()[i];
    out.pixels()[i] = label > 0 && lab.areas[static_cast<std::size_t>(label) - 1] >= min_area;
  }
  return out;
}

BinaryImage dilate(const BinaryImage& image, int radius) {
  if (radius < 0) throw InvalidParameter("dilation radius must be >= 0");
  const std::vector<PixelCoord> disk = disk_offsets(radius);
  BinaryImage out(image.width(), image.height(), 0);
  for (int y = 0; y < image.height(); ++y)
    for (int x = 0; x < image.width(); ++x) {
      if (!image(x, y)) continue;
      for (const PixelCoord& d : disk)
        if (out.contains(x + d.x, y + d.y)) out(x + d.x, y + d.y) = 1;
    }
  return out;
}

BinaryImage erode(const BinaryImage& image, int radius) {
  if (radius < 0) throw InvalidParameter("erosion radius must be >= 0");
  const std::vector<PixelCoord> disk = disk_offsets(radius);
  BinaryImage out(image.width(), image.height(), 0);
  for (int y = 0; y < image.height(); ++y)
    for (int x = 0; x < image.width(); ++x) {
      if (!image(x, y)) continue;
      bool keep = true;
      for (const PixelCoord& d : disk) {
        if (!image.at_or(x + d.x, y + d.y, 0)) {
          keep = false;
          break;
        }
      }
      out(x, y) = keep;
    }
  return out;
}

GrayImage render_mask(const BinaryImage& mask, double foreground, double background) {
  GrayImage out(mask.width(), mask.height());
  for (std::size_t i = 0; i < mask.size(); ++i)
    out.pixels()[i] = mask.pixels()[i] ? foreground : background;
  return out;
}

}  // namespace hybridsim
