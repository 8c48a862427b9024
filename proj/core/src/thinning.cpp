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

#include "hybridsim/thinning.hpp"

#include <array>
#include <bit>
#include <cmath>
#include <numbers>

namespace hybridsim {
namespace {

constexpr int kDx[8] = {0, 1, 1, 1, 0, -1, -1, -1};
constexpr int kDy[8] = {-1, -1, 0, 1, 1, 1, 0, -1};

constexpr bool bit(std::uint8_t code, int k) { return (code >> (k & 7)) & 1u; }

bool removable(std::uint8_t code) {
  return neighbor_count(code) >= 2 && connectivity_number(code) == 1;
}

bool staircase_corner(std::uint8_t code) {
  const bool n = bit(code, 0), e = bit(code, 2), s = bit(code, 4), w = bit(code, 6);
  return removable(code) && ((n && e) || (e && s) || (s && w) || (w && n));
}

using Table = std::array<std::uint8_t, 256>;

Table candidate_table(int subiteration) {
  Table t{};
  for (int c = 0; c < 256; ++c) {
    const auto code = static_cast<std::uint8_t>(c);
    const int b = neighbor_count(code);
    const bool p2 = bit(code, 0), p4 = bit(code, 2), p6 = bit(code, 4), p8 = bit(code, 6);
    bool products_zero = false;
    if (subiteration == 1)
      products_zero = !(p2 && p4 && p6) && !(p4 && p6 && p8);
    else
      products_zero = !(p2 && p4 && p8) && !(p2 && p6 && p8);
    t[c] = b >= 2 && b <= 6 && crossing_number(code) == 1 && products_zero;
  }
  return t;
}

const Table& table_for(int subiteration) {
  static const Table first = candidate_table(1);
  static const Table second = candidate_table(2);
  return subiteration == 1 ? first : second;
}

bool is_tracked(PixelClass c) { return c == PixelClass::kEndpoint || c == PixelClass::kPath; }

double step_length(PixelCoord a, PixelCoord b) {
  return (a.x != b.x && a.y != b.y) ? std::numbers::sqrt2 : 1.0;
}

// Axial neighbors in scan order, then diagonals in scan order.
constexpr int kTraceDx[8] = {0, -1, 1, 0, -1, 1, -1, 1};
constexpr int kTraceDy[8] = {-1, 0, 0, 1, -1, -1, 1, 1};

}  // namespace

std::uint8_t neighborhood_code(const BinaryImage& image, int x, int y) {
  std::uint8_t code = 0;
  for (int k = 0; k < 8; ++k)
    if (image.at_or(x + kDx[k], y + kDy[k], 0)) code |= static_cast<std::uint8_t>(1u << k);
  return code;
}

int neighbor_count(std::uint8_t code) { return std::popcount(code); }

int crossing_number(std::uint8_t code) {
  int a = 0;
  for (int k = 0; k < 8; ++k) a += !bit(code, k) && bit(code, k + 1);
  return a;
}

int connectivity_number(std::uint8_t code) {
  int n = 0;
  for (int k = 0; k < 8; k += 2) {
    const bool a = !bit(code, k), b = !bit(code, k + 1), c = !bit(code, k + 2);
    n += a - (a && b && c);
  }
  return n;
}

Skeleton make_skeleton(BinaryImage pixels) {
  Raster<std::uint8_t> neighbors(pixels.width(), pixels.height(), 0);
  for (int y = 0; y < pixels.height(); ++y)
    for (int x = 0; x < pixels.width(); ++x)
      if (pixels(x, y))
        neighbors(x, y) = static_cast<std::uint8_t>(neighbor_count(neighborhood_code(pixels, x, y)));
  return {std::move(pixels), std::move(neighbors)};
}

BinaryImage thinning_candidates(const BinaryImage& image, int subiteration) {
  if (subiteration != 1 && subiteration != 2)
    throw InvalidParameter("subiteration must be 1 or 2");
  const Table& table = table_for(subiteration);
  BinaryImage flags(image.width(), image.height(), 0);
  for (int y = 0; y < image.height(); ++y)
    for (int x = 0; x < image.width(); ++x)
      if (image(x, y)) flags(x, y) = table[neighborhood_code(image, x, y)];
  return flags;
}

Skeleton thin(const BinaryImage& mask) {
  BinaryImage img(mask.width(), mask.height(), 0);
  for (std::size_t i = 0; i < mask.size(); ++i) img.pixels()[i] = mask.pixels()[i] != 0;

  bool changed = true;
  while (changed) {
    changed = false;
    for (int sub = 1; sub <= 2; ++sub) {
      const BinaryImage flags = thinning_candidates(img, sub);
      for (int y = 0; y < img.height(); ++y)
        for (int x = 0; x < img.width(); ++x)
          if (flags(x, y) && removable(neighborhood_code(img, x, y))) {
            img(x, y) = 0;
            changed = true;
          }
    }
    if (changed) continue;
    for (int y = 0; y < img.height(); ++y)
      for (int x = 0; x < img.width(); ++x)
        if (img(x, y) && staircase_corner(neighborhood_code(img, x, y))) {
          img(x, y) = 0;
          changed = true;
        }
  }
  return make_skeleton(std::move(img));
}

PixelClass classify_pixel(const BinaryImage& skeleton, int x, int y) {
  if (!skeleton.at_or(x, y, 0)) return PixelClass::kBackground;
  const std::uint8_t code = neighborhood_code(skeleton, x, y);
  if (code == 0) return PixelClass::kIsolated;
  const int a = crossing_number(code);
  if (a <= 1) return PixelClass::kEndpoint;
  if (a == 2) return PixelClass::kPath;
  return PixelClass::kBranch;
}

std::vector<SkeletonSegment> extract_segments(const Skeleton& skeleton) {
  const BinaryImage& img = skeleton.pixels;
  const int w = img.width();
  const int h = img.height();
  Raster<PixelClass> cls(w, h, PixelClass::kBackground);
  for (int y = 0; y < h; ++y)
    for (int x = 0; x < w; ++x) cls(x, y) = classify_pixel(img, x, y);
  BinaryImage visited(w, h, 0);

  auto is_branch = [&](int x, int y) {
    return cls.contains(x, y) && cls(x, y) == PixelClass::kBranch;
  };
  auto is_open = [&](int x, int y) {
    return cls.contains(x, y) && is_tracked(cls(x, y)) && !visited(x, y);
  };

  std::vector<SkeletonSegment> out;
  auto finish = [&](SkeletonSegment seg) {
    for (std::size_t i = 1; i < seg.polyline.size(); ++i)
      seg.length += step_length(seg.polyline[i - 1], seg.polyline[i]);
    seg.is_branch_attached = is_branch(seg.front().x, seg.front().y) ||
                             is_branch(seg.back().x, seg.back().y);
    out.push_back(std::move(seg));
  };
  auto trace = [&](SkeletonSegment seg) {
    for (;;) {
      const PixelCoord cur = seg.polyline.back();
      const PixelCoord* prev =
          seg.polyline.size() >= 2 ? &seg.polyline[seg.polyline.size() - 2] : nullptr;
      bool moved = false;
      for (int k = 0; k < 8; ++k) {
        const PixelCoord n{cur.x + kTraceDx[k], cur.y + kTraceDy[k]};
        if (is_branch(n.x, n.y) && !(prev && *prev == n)) {
          seg.polyline.push_back(n);
          finish(std::move(seg));
          return;
        }
      }
      for (int k = 0; k < 8 && !moved; ++k) {
        const PixelCoord n{cur.x + kTraceDx[k], cur.y + kTraceDy[k]};
        if (is_open(n.x, n.y)) {
          visited(n.x, n.y) = 1;
          seg.polyline.push_back(n);
          moved = true;
        }
      }
      if (!moved) break;
    }
    finish(std::move(seg));
  };

  for (int y = 0; y < h; ++y)
    for (int x = 0; x < w; ++x)
      if (cls(x, y) == PixelClass::kEndpoint && !visited(x, y)) {
        visited(x, y) = 1;
        trace(SkeletonSegment{{{x, y}}});
      }
  for (int y = 0; y < h; ++y)
    for (int x = 0; x < w; ++x) {
      if (cls(x, y) != PixelClass::kBranch) continue;
      for (int k = 0; k < 8; ++k) {
        const int nx = x + kTraceDx[k];
        const int ny = y + kTraceDy[k];
        if (!is_open(nx, ny)) continue;
        visited(nx, ny) = 1;
        trace(SkeletonSegment{{{x, y}, {nx, ny}}});
      }
    }
  for (int y = 0; y < h; ++y)
    for (int x = 0; x < w; ++x) {
      if (is_open(x, y)) {
        visited(x, y) = 1;
        trace(SkeletonSegment{{{x, y}}});
      } else if (cls(x, y) == PixelClass::kIsolated) {
        finish(SkeletonSegment{{{x, y}}});
      }
    }
  return out;
}

std::vector<SkeletonSegment> prune_segments(const std::vector<SkeletonSegment>& segments,
                                            const LesionGeometry& geom,
                                            double min_frac_of_major,
                                            double max_frac_of_minor) {
  const double lo = min_frac_of_major * geom.major_axis_len;
  const double hi = max_frac_of_minor * geom.minor_axis_len;
  std::vector<SkeletonSegment> kept;
  for (const SkeletonSegment& s : segments)
    if (s.length > lo && s.length < hi) kept.push_back(s);
  return kept;
}

Skeleton remove_spurs(const Skeleton& skeleton, double max_length) {
  Skeleton current = skeleton;
  for (;;) {
    bool removed = false;
    const BinaryImage before = current.pixels;
    for (const SkeletonSegment& s : extract_segments(current)) {
      if (!s.is_branch_attached || !(s.length < max_length)) continue;
      const PixelClass a = classify_pixel(before, s.front().x, s.front().y);
      const PixelClass b = classify_pixel(before, s.back().x, s.back().y);
      const bool spur = (a == PixelClass::kEndpoint && b == PixelClass::kBranch) ||
                        (a == PixelClass::kBranch && b == PixelClass::kEndpoint);
      if (!spur) continue;
      for (const PixelCoord& p : s.polyline)
        if (classify_pixel(before, p.x, p.y) != PixelClass::kBranch) {
          current.pixels(p.x, p.y) = 0;
          removed = true;
        }
    }
    if (!removed) return current;
    current = thin(current.pixels);
  }
}

}  // namespace hybridsim
