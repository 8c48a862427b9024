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

#ifndef HYBRIDSIM_IMAGING_HPP_
#define HYBRIDSIM_IMAGING_HPP_

#include <span>
#include <vector>

#include "hybridsim/raster.hpp"

namespace hybridsim {

// Normalized Gaussian, radius ceil(3 sigma).
Kernel gaussian_kernel(double sigma);
// Laplacian of Gaussian, radius ceil(3 sigma), negative center, mean removed.
Kernel log_kernel(double sigma);
// Even-symmetric Gabor kernel with its mean removed; the carrier varies along
// direction `theta` (radians from the x axis). Radius ceil(3 sigma).
Kernel gabor_kernel(double wavelength, double sigma, double gamma, double theta);

// out(x, y) = sum_j sum_i k(i, j) * in(x + rx - i, y + ry - j), accumulated
// row-major over the kernel with replicated borders.
RealImage convolve(const RealImage& image, const Kernel& kernel);

RealImage log_filter(const RealImage& image, double sigma);

// 0, 45, 90 and 135 degrees.
std::vector<double> default_gabor_orientations();

// Per-pixel maximum of the Gabor responses over `orientations`.
RealImage gabor_bank(const RealImage& image, double wavelength, double sigma,
                     double gamma, std::span<const double> orientations);

inline constexpr int kOtsuBins = 256;

struct ThresholdResult {
  double threshold = 0.0;
  BinaryImage binary;  // 1 where value > threshold
};

// Otsu's method over 256 equal bins spanning [min, max]. Candidate thresholds
// are min + (k + 1) * (max - min) / 256 for k = 0..254; the lowest k wins
// ties. A constant input yields an all-zero map and threshold = that value.
ThresholdResult otsu_threshold(const RealImage& values);
// Same, computed over and applied to the pixels where `mask` is set only.
ThresholdResult otsu_threshold(const RealImage& values, const BinaryImage& mask);

// Threshold at the given percentile (0, 100) of the masked values
// (nearest rank).
ThresholdResult percentile_threshold(const RealImage& values, const BinaryImage& mask,
                                     double percentile);

// Otsu on intensities, largest 8-connected component of the dark class (or the
// bright class when `dark_lesion` is false), holes filled. Throws
// NoLesionError when no such class exists.
BinaryImage segment_lesion(const GrayImage& image, bool dark_lesion = true);

struct LesionGeometry {
  Point centroid;
  double major_axis_len = 0.0;
  double minor_axis_len = 0.0;
  // Angle of the major axis from the x axis in (-pi/2, pi/2]. Since y points
  // down, positive angles tilt the axis clockwise on screen. Near-isotropic
  // shapes report 0.
  double orientation = 0.0;
  double area = 0.0;
};

// Moment-equivalent ellipse; each pixel counts as a unit square, which adds
// 1/12 to both second central moments. Throws NoLesionError on an empty mask.
LesionGeometry lesion_geometry(const BinaryImage& mask);

// Maps source coordinates into an output canvas rotated by `angle` about
// `center`; the canvas is the smallest one containing every rotated source
// pixel center, offset by whole pixels so a zero angle is an exact copy.
struct RotationFrame {
  double angle = 0.0;
  Point center;
  int offset_x = 0;
  int offset_y = 0;
  int width = 0;
  int height = 0;

  Point to_dest(Point source) const;
  Point to_source(Point dest) const;
};

RotationFrame rotation_frame(int width, int height, Point center, double angle);

// Bilinear; samples that fall outside the source take `fill`.
GrayImage rotate_image(const GrayImage& image, const RotationFrame& frame, double fill);
// Bilinear on {0, 1} values, set where the sample is >= 0.5.
BinaryImage rotate_mask(const BinaryImage& mask, const RotationFrame& frame);

// Median of the outermost ring of pixels (lower median for even counts).
double border_median(const GrayImage& image);

RotationFrame major_axis_frame(const GrayImage& image, const LesionGeometry& geom);
// Rotates by -orientation about the centroid so the major axis is horizontal.
GrayImage rotate_to_major_axis(const GrayImage& image, const LesionGeometry& geom);

// Gaussian smoothing, central-difference gradients, non-maximum suppression
// along the quantized gradient direction, and 8-connected hysteresis.
// `high_percentile` selects the strong threshold among nonzero gradient
// magnitudes; the weak threshold is `low_fraction` of it.
BinaryImage canny(const GrayImage& image, double sigma, double low_fraction,
                  double high_percentile);

}  // namespace hybridsim

#endif  // HYBRIDSIM_IMAGING_HPP_
