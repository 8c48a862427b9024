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
#include <string>

#include "hybridsim/imaging.hpp"

namespace hybridsim {
namespace {

int kernel_radius(double sigma) { return static_cast<int>(std::ceil(3.0 * sigma)); }

void require_positive(double v, const char* name) {
  if (!(v > 0.0) || !std::isfinite(v))
    throw InvalidParameter(std::string(name) + " must be positive and finite");
}

void remove_mean(Kernel& k) {
  double sum = 0.0;
  for (double v : k.pixels()) sum += v;
  const double mean = sum / static_cast<double>(k.size());
  for (double& v : k.pixels()) v -= mean;
}

}  // namespace

Kernel gaussian_kernel(double sigma) {
  require_positive(sigma, "sigma");
  const int r = kernel_radius(sigma);
  Kernel k(2 * r + 1, 2 * r + 1);
  double sum = 0.0;
  for (int y = -r; y <= r; ++y)
    for (int x = -r; x <= r; ++x) {
      const double v = std::exp(-(x * x + y * y) / (2.0 * sigma * sigma));
      k(x + r, y + r) = v;
      sum += v;
    }
  for (double& v : k.pixels()) v /= sum;
  return k;
}

Kernel log_kernel(double sigma) {
  require_positive(sigma, "sigma");
  const int r = kernel_radius(sigma);
  const double s2 = sigma * sigma;
  Kernel k(2 * r + 1, 2 * r + 1);
  for (int y = -r; y <= r; ++y)
    for (int x = -r; x <= r; ++x) {
      const double q = (x * x + y * y) / (2.0 * s2);
      k(x + r, y + r) = -(1.0 - q) * std::exp(-q) / (std::numbers::pi * s2 * s2);
    }
  remove_mean(k);
  return k;
}

Kernel gabor_kernel(double wavelength, double sigma, double gamma, double theta) {
  require_positive(wavelength, "wavelength");
  require_positive(sigma, "sigma");
  require_positive(gamma, "gamma");
  const int r = kernel_radius(sigma);
  const double c = std::cos(theta);
  const double s = std::sin(theta);
  Kernel k(2 * r + 1, 2 * r + 1);
  for (int y = -r; y <= r; ++y)
    for (int x = -r; x <= r; ++x) {
      const double xr = x * c + y * s;
      const double yr = -x * s + y * c;
      k(x + r, y + r) = std::exp(-(xr * xr + gamma * gamma * yr * yr) / (2.0 * sigma * sigma)) *
                        std::cos(2.0 * std::numbers::pi * xr / wavelength);
    }
  remove_mean(k);
  return k;
}

RealImage convolve(const RealImage& image, const Kernel& kernel) {
  if (kernel.width() % 2 == 0 || kernel.height() % 2 == 0)
    throw InvalidParameter("kernel dimensions must be odd");
  const int w = image.width();
  const int h = image.height();
  const int rx = kernel.width() / 2;
  const int ry = kernel.height() / 2;
  RealImage out(w, h);
  if (image.empty()) return out;
  for (int y = 0; y < h; ++y) {
    const bool rows_inside = y - ry >= 0 && y + ry < h;
    for (int x = 0; x < w; ++x) {
      double acc = 0.0;
      if (rows_inside && x - rx >= 0 && x + rx < w) {
        for (int j = 0; j < kernel.height(); ++j) {
          const auto krow = kernel.row(j);
          const double* src = &image(x + rx, y + ry - j);
          for (int i = 0; i < kernel.width(); ++i) acc += krow[i] * src[-i];
        }
      } else {
        for (int j = 0; j < kernel.height(); ++j)
          for (int i = 0; i < kernel.width(); ++i)
            acc += kernel(i, j) * image.clamped(x + rx - i, y + ry - j);
      }
      out(x, y) = acc;
    }
  }
  return out;
}

RealImage log_filter(const RealImage& image, double sigma) {
  return convolve(image, log_kernel(sigma));
}

std::vector<double> default_gabor_orientations() {
  return {0.0, std::numbers::pi / 4.0, std::numbers::pi / 2.0, 3.0 * std::numbers::pi / 4.0};
}

RealImage gabor_bank(const RealImage& image, double wavelength, double sigma, double gamma,
                     std::span<const double> orientations) {
  if (orientations.empty()) throw InvalidParameter("at least one Gabor orientation required");
  RealImage best;
  for (double theta : orientations) {
    RealImage response = convolve(image, gabor_kernel(wavelength, sigma, gamma, theta));
    if (best.empty()) {
      best = std::move(response);
      continue;
    }
    for (std::size_t i = 0; i < best.size(); ++i)
      best.pixels()[i] = std::max(best.pixels()[i], response.pixels()[i]);
  }
  return best;
}

namespace {

ThresholdResult otsu_impl(const RealImage& values, const BinaryImage* mask) {
  if (values.empty()) throw InvalidParameter("threshold input is empty");
  if (mask && (mask->width() != values.width() || mask->height() != values.height()))
    throw InvalidParameter("mask dimensions differ from the image");
  auto selected = [&](std::size_t i) { return !mask || mask->pixels()[i]; };

  ThresholdResult result{0.0, BinaryImage(values.width(), values.height(), 0)};
  double lo = 0.0;
  double hi = 0.0;
  bool any = false;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (!selected(i)) continue;
    const double v = values.pixels()[i];
    if (!std::isfinite(v)) throw InvalidParameter("threshold input is not finite");
    lo = any ? std::min(lo, v) : v;
    hi = any ? std::max(hi, v) : v;
    any = true;
  }
  if (!any) return result;
  if (!(hi > lo)) {
    result.threshold = lo;
    return result;
  }

  const double step = (hi - lo) / kOtsuBins;
  auto cut = [&](int k) { return lo + (k + 1) * step; };
  // bin(v) is the number of candidate thresholds strictly below v, so that
  // "bin > k" is exactly "v > cut(k)".
  std::vector<double> count(kOtsuBins, 0.0);
  std::vector<double> sum(kOtsuBins, 0.0);
  double total_n = 0.0;
  double total_sum = 0.0;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (!selected(i)) continue;
    const double v = values.pixels()[i];
    int b = std::clamp(static_cast<int>((v - lo) / step), 0, kOtsuBins - 1);
    while (b > 0 && !(v > cut(b - 1))) --b;
    while (b < kOtsuBins - 1 && v > cut(b)) ++b;
    count[b] += 1.0;
    sum[b] += v;
    total_n += 1.0;
    total_sum += v;
  }

  int best_k = 0;
  double best_var = -1.0;
  double n0 = 0.0;
  double s0 = 0.0;
  for (int k = 0; k < kOtsuBins - 1; ++k) {
    n0 += count[k];
    s0 += sum[k];
    const double n1 = total_n - n0;
    if (n0 == 0.0 || n1 == 0.0) continue;
    const double m0 = s0 / n0;
    const double m1 = (total_sum - s0) / n1;
    const double var = n0 * n1 * (m0 - m1) * (m0 - m1);
    if (var > best_var) {
      best_var = var;
      best_k = k;
    }
  }
  result.threshold = cut(best_k);
  for (std::size_t i = 0; i < values.size(); ++i)
    result.binary.pixels()[i] = selected(i) && values.pixels()[i] > result.threshold;
  return result;
}

}  // namespace

ThresholdResult otsu_threshold(const RealImage& values) { return otsu_impl(values, nullptr); }

ThresholdResult otsu_threshold(const RealImage& values, const BinaryImage& mask) {
  return otsu_impl(values, &mask);
}

ThresholdResult percentile_threshold(const RealImage& values, const BinaryImage& mask,
                                     double percentile) {
  if (!(percentile > 0.0 && percentile < 100.0))
    throw InvalidParameter("percentile must lie in (0, 100)");
  if (mask.width() != values.width() || mask.height() != values.height())
    throw InvalidParameter("mask dimensions differ from the image");
  std::vector<double> sample;
  for (std::size_t i = 0; i < values.size(); ++i)
    if (mask.pixels()[i]) sample.push_back(values.pixels()[i]);
  ThresholdResult result{0.0, BinaryImage(values.width(), values.height(), 0)};
  if (sample.empty()) return result;
  std::sort(sample.begin(), sample.end());
  const auto rank = static_cast<std::size_t>(
      std::ceil(percentile / 100.0 * static_cast<double>(sample.size())));
  result.threshold = sample[std::max<std::size_t>(rank, 1) - 1];
  for (std::size_t i = 0; i < values.size(); ++i)
    result.binary.pixels()[i] = mask.pixels()[i] && values.pixels()[i] > result.threshold;
  return result;
}

}  // namespace hybridsim
