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

#ifndef HYBRIDSIM_PNM_HPP_
#define HYBRIDSIM_PNM_HPP_

#include <array>
#include <cstdint>
#include <string>
#include <string_view>

#include "hybridsim/raster.hpp"

namespace hybridsim {

// Decodes ASCII (P2) or binary (P5) graymaps with maxval <= 255. Sample v maps
// to v / maxval. '#' comments are accepted anywhere in the header.
GrayImage decode_pgm(std::string_view bytes);

// Binary P5, maxval 255; each intensity is clamped to [0, 1] and rounded half
// up to the nearest level.
std::string encode_pgm(const GrayImage& image);

std::uint8_t to_byte(double intensity);

using Rgb = std::array<std::uint8_t, 3>;
using RgbImage = Raster<Rgb>;

RgbImage gray_to_rgb(const GrayImage& image);

// Binary P6, maxval 255.
std::string encode_ppm(const RgbImage& image);

}  // namespace hybridsim

#endif  // HYBRIDSIM_PNM_HPP_
