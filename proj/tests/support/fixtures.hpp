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

#ifndef HYBRIDSIM_TESTS_SUPPORT_FIXTURES_HPP_
#define HYBRIDSIM_TESTS_SUPPORT_FIXTURES_HPP_

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iterator>
#include <random>
#include <string>

#include <unistd.h>

#include "hybridsim/raster.hpp"

namespace hybridsim::testing {

// Pixel centers inside the ellipse with semi-axes (a, b) rotated by `theta`
// (clockwise on screen, y down).
inline BinaryImage ellipse_mask(int w, int h, double cx, double cy, double a, double b,
                                double theta = 0.0) {
  BinaryImage m(w, h, 0);
  const double c = std::cos(theta), s = std::sin(theta);
  for (int y = 0; y < h; ++y)
    for (int x = 0; x < w; ++x) {
      const double dx = x - cx, dy = y - cy;
      const double u = dx * c + dy * s, v = -dx * s + dy * c;
      m(x, y) = (u * u) / (a * a) + (v * v) / (b * b) <= 1.0;
    }
  return m;
}

inline GrayImage mask_image(const BinaryImage& mask, double inside, double outside) {
  GrayImage g(mask.width(), mask.height(), outside);
  for (std::size_t i = 0; i < mask.size(); ++i)
    if (mask.pixels()[i]) g.pixels()[i] = inside;
  return g;
}

// Union of 1-4 random ellipses and rectangles, with some pixels punched out.
inline BinaryImage random_blob(std::uint64_t seed, int w = 40, int h = 40) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> ux(4.0, w - 5.0), uy(4.0, h - 5.0);
  std::uniform_real_distribution<double> size(2.0, w / 4.0), angle(0.0, 3.14159);
  std::uniform_int_distribution<int> count(1, 4), kind(0, 1);
  BinaryImage m(w, h, 0);
  const int n = count(rng);
  for (int k = 0; k < n; ++k) {
    const double cx = ux(rng), cy = uy(rng), a = size(rng), b = size(rng), t = angle(rng);
    if (kind(rng) == 0) {
      const BinaryImage e = ellipse_mask(w, h, cx, cy, a, b, t);
      for (std::size_t i = 0; i < m.size(); ++i) m.pixels()[i] |= e.pixels()[i];
    } else {
      for (int y = std::max(0, int(cy - b / 2)); y < std::min(h, int(cy + b / 2) + 1); ++y)
        for (int x = std::max(0, int(cx - a)); x < std::min(w, int(cx + a) + 1); ++x) m(x, y) = 1;
    }
  }
  std::bernoulli_distribution punch(0.03);
  for (auto& p : m.pixels())
    if (p && punch(rng)) p = 0;
  return m;
}

inline std::string read_bytes(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

inline void write_bytes(const std::filesystem::path& p, const std::string& bytes) {
  std::ofstream out(p, std::ios::binary);
  out << bytes;
}

// Fresh directory under the system temp dir, removed on destruction.
class TempDir {
 public:
  explicit TempDir(const std::string& tag) {
    static int counter = 0;
    path_ = std::filesystem::temp_directory_path() /
            ("hybridsim-" + tag + "-" + std::to_string(::getpid()) + "-" +
             std::to_string(counter++));
    std::filesystem::remove_all(path_);
    std::filesystem::create_directories(path_);
  }
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path_, ec);
  }
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;

  const std::filesystem::path& path() const { return path_; }
  std::string operator/(const std::string& name) const { return (path_ / name).string(); }

 private:
  std::filesystem::path path_;
};

}  // namespace hybridsim::testing

#endif  // HYBRIDSIM_TESTS_SUPPORT_FIXTURES_HPP_
