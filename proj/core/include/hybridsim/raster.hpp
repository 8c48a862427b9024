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

#ifndef HYBRIDSIM_RASTER_HPP_
#define HYBRIDSIM_RASTER_HPP_

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "hybridsim/errors.hpp"

namespace hybridsim {

// Row-major 2-D raster. Coordinates are (x, y) with x to the right and y
// downward; (0, 0) is the top-left pixel.
template <typename T>
class Raster {
 public:
  using value_type = T;

  Raster() = default;
  Raster(int width, int height, T fill = T{})
      : width_(width), height_(height) {
    if (width < 0 || height < 0)
      throw InvalidParameter("raster dimensions must be non-negative");
    data_.assign(static_cast<std::size_t>(width) * static_cast<std::size_t>(height),
                 fill);
  }
  Raster(int width, int height, std::vector<T> data)
      : width_(width), height_(height), data_(std::move(data)) {
    if (width < 0 || height < 0 ||
        data_.size() != static_cast<std::size_t>(width) * static_cast<std::size_t>(height))
      throw InvalidParameter("raster data does not match its dimensions");
  }

  int width() const noexcept { return width_; }
  int height() const noexcept { return height_; }
  std::size_t size() const noexcept { return data_.size(); }
  bool empty() const noexcept { return data_.empty(); }

  bool contains(int x, int y) const noexcept {
    return x >= 0 && y >= 0 && x < width_ && y < height_;
  }

  T& operator()(int x, int y) noexcept { return data_[index(x, y)]; }
  const T& operator()(int x, int y) const noexcept { return data_[index(x, y)]; }

  // Replicate-border access.
  const T& clamped(int x, int y) const noexcept {
    return (*this)(std::clamp(x, 0, width_ - 1), std::clamp(y, 0, height_ - 1));
  }

  // Zero outside the raster.
  T at_or(int x, int y, T outside) const noexcept {
    return contains(x, y) ? (*this)(x, y) : outside;
  }

  std::span<T> pixels() noexcept { return data_; }
  std::span<const T> pixels() const noexcept { return data_; }
  std::span<T> row(int y) noexcept {
    return std::span<T>(data_).subspan(index(0, y), static_cast<std::size_t>(width_));
  }
  std::span<const T> row(int y) const noexcept {
    return std::span<const T>(data_).subspan(index(0, y),
                                             static_cast<std::size_t>(width_));
  }

  friend bool operator==(const Raster&, const Raster&) = default;

 private:
  std::size_t index(int x, int y) const noexcept {
    return static_cast<std::size_t>(y) * static_cast<std::size_t>(width_) +
           static_cast<std::size_t>(x);
  }

  int width_ = 0;
  int height_ = 0;
  std::vector<T> data_;
};

// Intensities normalized to [0, 1].
using GrayImage = Raster<double>;
// Unclamped filter responses.
using RealImage = Raster<double>;
// Values in {0, 1}.
using BinaryImage = Raster<std::uint8_t>;
// Odd-sized convolution kernel.
using Kernel = Raster<double>;

struct Point {
  double x = 0.0;
  double y = 0.0;
};

struct PixelCoord {
  int x = 0;
  int y = 0;

  friend bool operator==(const PixelCoord&, const PixelCoord&) = default;
  friend auto operator<=>(const PixelCoord& a, const PixelCoord& b) {
    if (auto c = a.y <=> b.y; c != 0) return c;
    return a.x <=> b.x;
  }
};

enum class Connectivity { kFour = 4, kEight = 8 };

std::size_t count_foreground(const BinaryImage& image);

// Component labels start at 1 and follow scan order of each component's
// first pixel; background is 0.
struct Labeling {
  Raster<int> labels;
  std::vector<std::size_t> areas;  // areas[k - 1] is the area of label k
};
Labeling label_components(const BinaryImage& image, Connectivity connectivity);
std::size_t count_components(const BinaryImage& image, Connectivity connectivity);

// Sets every background region that does not touch the raster edge
// (4-connected background).
BinaryImage fill_holes(const BinaryImage& image);

// Keeps only the largest 8-connected component; the first in scan order wins
// ties.
BinaryImage largest_component(const BinaryImage& image);

// Drops 8-connected components with fewer than `min_area` pixels.
BinaryImage remove_small_components(const BinaryImage& image, std::size_t min_area);

// Euclidean disk structuring element of the given radius.
BinaryImage dilate(const BinaryImage& image, int radius);
BinaryImage erode(const BinaryImage& image, int radius);

// Foreground -> `foreground`, background -> `background`.
GrayImage render_mask(const BinaryImage& mask, double foreground = 0.0,
                      double background = 1.0);

}  // namespace hybridsim

#endif  // HYBRIDSIM_RASTER_HPP_
