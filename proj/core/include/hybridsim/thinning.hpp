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

#ifndef HYBRIDSIM_THINNING_HPP_
#define HYBRIDSIM_THINNING_HPP_

#include <cstdint>
#include <vector>

#include "hybridsim/imaging.hpp"
#include "hybridsim/raster.hpp"

namespace hybridsim {

// 8-neighborhood code: bit k is set when neighbor P(k+2) is foreground, with
// P2 = N, P3 = NE, P4 = E, P5 = SE, P6 = S, P7 = SW, P8 = W, P9 = NW.
std::uint8_t neighborhood_code(const BinaryImage& image, int x, int y);
// B(p): number of foreground 8-neighbors.
int neighbor_count(std::uint8_t code);
// A(p): number of background-to-foreground transitions in P2, P3, ..., P9, P2.
int crossing_number(std::uint8_t code);
// 8-connectivity number; 1 exactly when removing a border pixel keeps the
// local topology.
int connectivity_number(std::uint8_t code);

struct Skeleton {
  BinaryImage pixels;
  Raster<std::uint8_t> neighbors;  // B(p) for foreground pixels, 0 elsewhere
};

Skeleton make_skeleton(BinaryImage pixels);

// Pixels that subiteration 1 or 2 of the two-subiteration parallel thinning
// would delete: 2 <= B(p) <= 6, A(p) = 1, and P2*P4*P6 = P4*P6*P8 = 0
// (first) or P2*P4*P8 = P2*P6*P8 = 0 (second). A pure function of `image`.
BinaryImage thinning_candidates(const BinaryImage& image, int subiteration);

// Alternates both subiterations until nothing changes. Each subiteration's
// candidates are removed in scan order, skipping any that would change the
// topology given the removals already made, so two-pixel-thick strokes and
// 2x2 blocks survive. A final pass removes staircase corners (pixels with two
// perpendicular 4-neighbors whose removal keeps topology) and the loop
// repeats until stable, which makes thin() idempotent.
Skeleton thin(const BinaryImage& mask);

enum class PixelClass : std::uint8_t { kBackground, kIsolated, kEndpoint, kPath, kBranch };

// Classified by crossing number: A = 1 endpoint, A = 2 path, A >= 3 branch,
// no neighbors isolated. Pixels on the diagonal shoulders of a junction thus
// stay path pixels.
PixelClass classify_pixel(const BinaryImage& skeleton, int x, int y);

struct SkeletonSegment {
  std::vector<PixelCoord> polyline;
  double length = 0.0;  // unit axial steps, sqrt(2) diagonal steps
  bool is_branch_attached = false;

  PixelCoord front() const { return polyline.front(); }
  PixelCoord back() const { return polyline.back(); }
};

// Maximal 8-paths of non-branch pixels. A segment that ends at a branch pixel
// includes it as its terminal point and is flagged branch-attached. Seeds are
// endpoints in scan order, then unvisited neighbors of branch pixels, then
// closed loops; the next step prefers a branch pixel, then a 4-neighbor, then
// the lowest scan index. Isolated pixels become single-pixel segments.
std::vector<SkeletonSegment> extract_segments(const Skeleton& skeleton);

// Keeps segments with 0.01 * major < length < minor / 3 (both strict).
std::vector<SkeletonSegment> prune_segments(const std::vector<SkeletonSegment>& segments,
                                            const LesionGeometry& geom,
                                            double min_frac_of_major = 0.01,
                                            double max_frac_of_minor = 1.0 / 3.0);

// Deletes endpoint-to-branch segments shorter than `max_length`, then re-thins;
// repeats until no spur is left.
Skeleton remove_spurs(const Skeleton& skeleton, double max_length);

}  // namespace hybridsim

#endif  // HYBRIDSIM_THINNING_HPP_
