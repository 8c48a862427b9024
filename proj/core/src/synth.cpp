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
#include <random>

#include "hybridsim/streaks.hpp"

namespace hybridsim {
namespace {

double segment_distance(double px, double py, double ax, double ay, double bx, double by) {
  const double vx = bx - ax;
  const double vy = by - ay;
  const double len2 = vx * vx + vy * vy;
  double t = len2 > 0.0 ? ((px - ax) * vx + (py - ay) * vy) / len2 : 0.0;
  t = std::clamp(t, 0.0, 1.0);
  return std::hypot(px - (ax + t * vx), py - (ay + t * vy));
}

struct Bar {
  double ax, ay, bx, by;
};

}  // namespace

void validate(const SynthParams& p) {
  auto require = [](bool ok, const char* what) {
    if (!ok) throw InvalidParameter(what);
  };
  require(p.width > 0 && p.height > 0, "canvas must be nonempty");
  require(p.semi_major > 0.0 && p.aspect > 0.0 && p.aspect <= 1.0,
          "lesion axes must be positive with aspect in (0, 1]");
  require(p.n_streaks >= 0, "n_streaks must be >= 0");
  require(p.streak_len > 0.0 && p.streak_width > 0.0, "streak size must be positive");
  require(p.streak_margin >= 0.0, "streak_margin must be >= 0");
  require(p.noise_sigma >= 0.0, "noise_sigma must be >= 0");
  require(p.streak_intensity < p.lesion_intensity && p.lesion_intensity < p.skin_intensity,
          "intensities must satisfy streak < lesion < skin");
  require(p.streak_intensity >= 0.0 && p.skin_intensity <= 1.0, "intensities must lie in [0, 1]");
  const double cx = (p.width - 1) / 2.0;
  const double cy = (p.height - 1) / 2.0;
  require(p.semi_major <= cx && p.semi_major * p.aspect <= cy, "lesion does not fit the canvas");
  const double semi_minor = p.semi_major * p.aspect;
  require(p.streak_len + p.streak_margin < semi_minor,
          "streaks must end inside the lesion and start outside its center");
}

GrayImage synth_mole(const SynthParams& p) {
  validate(p);
  const double cx = (p.width - 1) / 2.0;
  const double cy = (p.height - 1) / 2.0;
  const double a = p.semi_major;
  const double b = p.semi_major * p.aspect;

  std::vector<Bar> bars;
  for (int k = 0; k < p.n_streaks; ++k) {
    const double phi = p.phase + 2.0 * std::numbers::pi * k / p.n_streaks;
    const double c = std::cos(phi);
    const double s = std::sin(phi);
    const double rho = a * b / std::hypot(b * c, a * s);
    const double outer = rho - p.streak_margin - p.streak_width / 2.0;
    const double inner = outer - p.streak_len;
    bars.push_back({cx + inner * c, cy + inner * s, cx + outer * c, cy + outer * s});
  }

  GrayImage img(p.width, p.height, p.skin_intensity);
  for (int y = 0; y < p.height; ++y)
    for (int x = 0; x < p.width; ++x) {
      const double dx = (x - cx) / a;
      const double dy = (y - cy) / b;
      if (dx * dx + dy * dy > 1.0) continue;
      double v = p.lesion_intensity;
      for (const Bar& bar : bars)
        if (segment_distance(x, y, bar.ax, bar.ay, bar.bx, bar.by) <= p.streak_width / 2.0)
          v = p.streak_intensity;
      img(x, y) = v;
    }

  if (p.noise_sigma > 0.0) {
    std::mt19937_64 rng(p.seed);
    std::normal_distribution<double> noise(0.0, p.noise_sigma);
    const double bound = 3.0 * p.noise_sigma;
    for (double& v : img.pixels()) v = std::clamp(v + std::clamp(noise(rng), -bound, bound), 0.0, 1.0);
  }
  return img;
}

}  // namespace hybridsim
