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

#ifndef HYBRIDSIM_TESTS_SUPPORT_ORACLES_HPP_
#define HYBRIDSIM_TESTS_SUPPORT_ORACLES_HPP_

// Straightforward reference implementations used as test oracles. They share
// no code with the library beyond the raster container.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <numbers>
#include <string>
#include <vector>

#include "hybridsim/device_model.hpp"
#include "hybridsim/raster.hpp"
#include "hybridsim/scheduler.hpp"

namespace hybridsim::oracle {

// Direct correlation with the flipped kernel, replicated borders, kernel
// rows outer and columns inner.
inline RealImage naive_convolve(const RealImage& in, const Kernel& k) {
  const int rx = k.width() / 2, ry = k.height() / 2;
  RealImage out(in.width(), in.height(), 0.0);
  for (int y = 0; y < in.height(); ++y)
    for (int x = 0; x < in.width(); ++x) {
      double acc = 0.0;
      for (int j = 0; j < k.height(); ++j)
        for (int i = 0; i < k.width(); ++i) {
          const int sx = std::clamp(x + rx - i, 0, in.width() - 1);
          const int sy = std::clamp(y + ry - j, 0, in.height() - 1);
          acc += k(i, j) * in(sx, sy);
        }
      out(x, y) = acc;
    }
  return out;
}

struct OtsuResult {
  double threshold = 0.0;
  BinaryImage binary;
};

// Tries each of the 255 cut points, recomputing both classes from scratch.
inline OtsuResult brute_otsu(const RealImage& v, const BinaryImage* mask = nullptr) {
  auto inside = [&](std::size_t i) { return mask == nullptr || mask->pixels()[i] != 0; };
  double lo = std::numeric_limits<double>::infinity(), hi = -lo;
  std::size_t n = 0;
  for (std::size_t i = 0; i < v.size(); ++i)
    if (inside(i)) {
      lo = std::min(lo, v.pixels()[i]);
      hi = std::max(hi, v.pixels()[i]);
      ++n;
    }
  OtsuResult r{0.0, BinaryImage(v.width(), v.height(), 0)};
  if (n == 0) return r;
  if (!(hi > lo)) {
    r.threshold = lo;
    return r;
  }
  const double step = (hi - lo) / 256.0;
  double best = -1.0;
  for (int k = 0; k < 255; ++k) {
    const double t = lo + (k + 1) * step;
    double n0 = 0, n1 = 0, s0 = 0, s1 = 0;
    for (std::size_t i = 0; i < v.size(); ++i) {
      if (!inside(i)) continue;
      if (v.pixels()[i] > t) {
        ++n1;
        s1 += v.pixels()[i];
      } else {
        ++n0;
        s0 += v.pixels()[i];
      }
    }
    if (n0 == 0 || n1 == 0) continue;
    const double d = s0 / n0 - s1 / n1;
    const double var = n0 * n1 * d * d;
    if (var > best) {
      best = var;
      r.threshold = t;
    }
  }
  for (std::size_t i = 0; i < v.size(); ++i)
    r.binary.pixels()[i] = inside(i) && v.pixels()[i] > r.threshold;
  return r;
}

// Best subset over integer time ticks. Ties prefer fewer items, then the
// lexicographically smaller index list (ids are assumed to sort like their
// indices).
struct SubsetResult {
  std::vector<int> items;
  double objective = 0.0;
};

inline SubsetResult exhaustive_subset(
    const std::vector<std::int64_t>& ticks, std::int64_t budget,
    const std::function<double(const std::vector<int>&)>& objective) {
  const int n = static_cast<int>(ticks.size());
  SubsetResult best{{}, objective({})};
  for (std::uint32_t mask = 1; mask < (1u << n); ++mask) {
    std::int64_t t = 0;
    std::vector<int> items;
    for (int i = 0; i < n; ++i)
      if (mask >> i & 1u) {
        t += ticks[i];
        items.push_back(i);
      }
    if (t > budget) continue;
    const double f = objective(items);
    const bool better =
        f > best.objective ||
        (f == best.objective && (items.size() < best.items.size() ||
                                 (items.size() == best.items.size() && items < best.items)));
    if (better) best = {items, f};
  }
  return best;
}

// compute / (rate * affinity) plus both transfers for linked devices.
inline double stage_seconds(const PipelineStage& s, const DeviceSpec& d) {
  double aff = 1.0;
  if (auto it = s.affinity.find(d.kind); it != s.affinity.end()) aff = it->second;
  double t = s.compute_gflop / (d.rated_gflops * aff);
  if (!d.host_local)
    t += 2.0 * d.link_latency_s +
         static_cast<double>(s.input_bytes + s.output_bytes) / (d.link_bandwidth_gbs * 1e9);
  return t;
}

// Minimum serial duration over every assignment of stages to devices.
inline double enumerate_best_total(const std::vector<PipelineStage>& stages,
                                   const std::vector<DeviceSpec>& devices) {
  const std::size_t s = stages.size(), d = devices.size();
  std::vector<std::size_t> pick(s, 0);
  double best = std::numeric_limits<double>::infinity();
  while (true) {
    double total = 0.0;
    for (std::size_t i = 0; i < s; ++i) total += stage_seconds(stages[i], devices[pick[i]]);
    best = std::min(best, total);
    std::size_t i = 0;
    while (i < s && ++pick[i] == d) pick[i++] = 0;
    if (i == s) break;
  }
  return best;
}

// Scalar two-subiteration thinning written from the textbook formulas, with
// the same topology guard and staircase pass as the library.
inline BinaryImage thin_reference(const BinaryImage& mask) {
  BinaryImage img(mask.width(), mask.height(), 0);
  for (std::size_t i = 0; i < mask.size(); ++i) img.pixels()[i] = mask.pixels()[i] ? 1 : 0;
  auto ring = [&](int x, int y) {
    // p[2..9] = N, NE, E, SE, S, SW, W, NW; p[10] = p[2], p[11] = p[3].
    std::array<int, 12> p{};
    p[2] = img.at_or(x, y - 1, 0);
    p[3] = img.at_or(x + 1, y - 1, 0);
    p[4] = img.at_or(x + 1, y, 0);
    p[5] = img.at_or(x + 1, y + 1, 0);
    p[6] = img.at_or(x, y + 1, 0);
    p[7] = img.at_or(x - 1, y + 1, 0);
    p[8] = img.at_or(x - 1, y, 0);
    p[9] = img.at_or(x - 1, y - 1, 0);
    p[10] = p[2];
    p[11] = p[3];
    return p;
  };
  auto count = [](const std::array<int, 12>& p) {
    int b = 0;
    for (int k = 2; k <= 9; ++k) b += p[k];
    return b;
  };
  auto transitions = [](const std::array<int, 12>& p) {
    int a = 0;
    for (int k = 2; k <= 9; ++k) a += p[k] == 0 && p[k + 1] == 1;
    return a;
  };
  auto yokoi8 = [](const std::array<int, 12>& p) {
    int n = 0;
    for (int k : {2, 4, 6, 8}) {
      const int q0 = 1 - p[k], q1 = 1 - p[k + 1], q2 = 1 - p[k + 2];
      n += q0 - q0 * q1 * q2;
    }
    return n;
  };
  auto simple = [&](const std::array<int, 12>& p) { return count(p) >= 2 && yokoi8(p) == 1; };

  bool changed = true;
  while (changed) {
    changed = false;
    for (int sub = 1; sub <= 2; ++sub) {
      BinaryImage flag(img.width(), img.height(), 0);
      for (int y = 0; y < img.height(); ++y)
        for (int x = 0; x < img.width(); ++x) {
          if (!img(x, y)) continue;
          const auto p = ring(x, y);
          const int b = count(p);
          const bool products = sub == 1 ? (p[2] * p[4] * p[6] == 0 && p[4] * p[6] * p[8] == 0)
                                         : (p[2] * p[4] * p[8] == 0 && p[2] * p[6] * p[8] == 0);
          flag(x, y) = b >= 2 && b <= 6 && transitions(p) == 1 && products;
        }
      for (int y = 0; y < img.height(); ++y)
        for (int x = 0; x < img.width(); ++x)
          if (flag(x, y) && simple(ring(x, y))) {
            img(x, y) = 0;
            changed = true;
          }
    }
    if (changed) continue;
    for (int y = 0; y < img.height(); ++y)
      for (int x = 0; x < img.width(); ++x) {
        if (!img(x, y)) continue;
        const auto p = ring(x, y);
        const bool corner = (p[2] && p[4]) || (p[4] && p[6]) || (p[6] && p[8]) || (p[8] && p[2]);
        if (corner && simple(p)) {
          img(x, y) = 0;
          changed = true;
        }
      }
  }
  return img;
}

// Flood-fill component count, 8-connected.
inline int components8(const BinaryImage& m) {
  BinaryImage seen(m.width(), m.height(), 0);
  int n = 0;
  std::vector<std::pair<int, int>> stack;
  for (int y = 0; y < m.height(); ++y)
    for (int x = 0; x < m.width(); ++x) {
      if (!m(x, y) || seen(x, y)) continue;
      ++n;
      stack.push_back({x, y});
      seen(x, y) = 1;
      while (!stack.empty()) {
        auto [cx, cy] = stack.back();
        stack.pop_back();
        for (int dy = -1; dy <= 1; ++dy)
          for (int dx = -1; dx <= 1; ++dx) {
            const int nx = cx + dx, ny = cy + dy;
            if (m.contains(nx, ny) && m(nx, ny) && !seen(nx, ny)) {
              seen(nx, ny) = 1;
              stack.push_back({nx, ny});
            }
          }
      }
    }
  return n;
}

struct Moments {
  double cx = 0.0, cy = 0.0;
  double major = 0.0, minor = 0.0;
  double orientation = 0.0;
};

// Unit-square pixels, extended-precision sums.
inline Moments moment_ellipse(const BinaryImage& m) {
  long double n = 0, sx = 0, sy = 0;
  for (int y = 0; y < m.height(); ++y)
    for (int x = 0; x < m.width(); ++x)
      if (m(x, y)) {
        n += 1;
        sx += x;
        sy += y;
      }
  const long double cx = sx / n, cy = sy / n;
  long double sxx = 0, syy = 0, sxy = 0;
  for (int y = 0; y < m.height(); ++y)
    for (int x = 0; x < m.width(); ++x)
      if (m(x, y)) {
        sxx += (x - cx) * (x - cx);
        syy += (y - cy) * (y - cy);
        sxy += (x - cx) * (y - cy);
      }
  const long double mu20 = sxx / n + 1.0L / 12, mu02 = syy / n + 1.0L / 12, mu11 = sxy / n;
  const long double half = (mu20 + mu02) / 2;
  const long double root = std::sqrt(((mu20 - mu02) / 2) * ((mu20 - mu02) / 2) + mu11 * mu11);
  Moments r;
  r.cx = static_cast<double>(cx);
  r.cy = static_cast<double>(cy);
  r.major = static_cast<double>(4 * std::sqrt(half + root));
  r.minor = static_cast<double>(4 * std::sqrt(half - root));
  r.orientation = static_cast<double>(0.5L * std::atan2(2 * mu11, mu20 - mu02));
  return r;
}

// Distance between two orientations modulo pi.
inline double angle_diff_mod_pi(double a, double b) {
  double d = std::fmod(a - b, std::numbers::pi);
  if (d < 0) d += std::numbers::pi;
  return std::min(d, std::numbers::pi - d);
}

// Counts angular clusters of dark pixels in the elliptical annulus
// r_in <= (dx/a)^2 + (dy/b)^2 <= r_out (normalized radii) around (cx, cy).
// Bins are one degree; runs separated by fewer than `gap` empty bins merge.
inline int angular_dark_clusters(const GrayImage& g, double cx, double cy, double a, double b,
                                 double r_in, double r_out, double dark_below, int gap = 3) {
  std::array<int, 360> bins{};
  for (int y = 0; y < g.height(); ++y)
    for (int x = 0; x < g.width(); ++x) {
      const double dx = x - cx, dy = y - cy;
      const double r = std::sqrt((dx / a) * (dx / a) + (dy / b) * (dy / b));
      if (r < r_in || r > r_out || g(x, y) >= dark_below) continue;
      double deg = std::atan2(dy, dx) * 180.0 / std::numbers::pi;
      if (deg < 0) deg += 360.0;
      ++bins[static_cast<int>(deg) % 360];
    }
  int start = -1;
  for (int i = 0; i < 360; ++i)
    if (bins[i] == 0) {
      start = i;
      break;
    }
  if (start < 0) return 1;
  int clusters = 0, empty_run = gap;
  for (int k = 1; k <= 360; ++k) {
    const int i = (start + k) % 360;
    if (bins[i] > 0) {
      if (empty_run >= gap) ++clusters;
      empty_run = 0;
    } else {
      ++empty_run;
    }
  }
  return clusters;
}

}  // namespace hybridsim::oracle

#endif  // HYBRIDSIM_TESTS_SUPPORT_ORACLES_HPP_
