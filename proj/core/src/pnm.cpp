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

#include "hybridsim/pnm.hpp"

#include <cmath>
#include <cstddef>
#include <limits>

namespace hybridsim {
namespace {

class HeaderReader {
 public:
  explicit HeaderReader(std::string_view bytes) : bytes_(bytes) {}

  // Skips whitespace and comments, then reads one unsigned decimal token.
  long next_number(const char* field) {
    skip_separators();
    const std::size_t start = pos_;
    long value = 0;
    while (pos_ < bytes_.size() && bytes_[pos_] >= '0' && bytes_[pos_] <= '9') {
      value = value * 10 + (bytes_[pos_] - '0');
      if (value > std::numeric_limits<int>::max())
        throw ParseError(ParseErrorKind::kBadHeader, std::string(field) + " is too large");
      ++pos_;
    }
    if (pos_ == start) {
      if (pos_ >= bytes_.size())
        throw ParseError(ParseErrorKind::kBadHeader, std::string("missing ") + field);
      throw ParseError(ParseErrorKind::kBadHeader, std::string("malformed ") + field);
    }
    return value;
  }

  // Consumes the single whitespace byte that separates a binary header from
  // its payload.
  void end_binary_header() {
    if (pos_ >= bytes_.size() || !is_space(bytes_[pos_]))
      throw ParseError(ParseErrorKind::kBadHeader, "missing whitespace after header");
    ++pos_;
  }

  std::size_t position() const { return pos_; }

 private:
  static bool is_space(char c) {
    return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\v' || c == '\f';
  }

  void skip_separators() {
    while (pos_ < bytes_.size()) {
      if (is_space(bytes_[pos_])) {
        ++pos_;
      } else if (bytes_[pos_] == '#') {
        while (pos_ < bytes_.size() && bytes_[pos_] != '\n') ++pos_;
      } else {
        break;
      }
    }
  }

  std::string_view bytes_;
  std::size_t pos_ = 2;
};

}  // namespace

GrayImage decode_pgm(std::string_view bytes) {
  if (bytes.size() < 2 || bytes[0] != 'P' || (bytes[1] != '2' && bytes[1] != '5'))
    throw ParseError(ParseErrorKind::kBadMagic, "not a P2/P5 graymap");
  const bool binary = bytes[1] == '5';
  HeaderReader header(bytes);
  const long width = header.next_number("width");
  const long height = header.next_number("height");
  const long maxval = header.next_number("maxval");
  if (width <= 0 || height <= 0)
    throw ParseError(ParseErrorKind::kBadHeader, "dimensions must be positive");
  if (maxval <= 0 || maxval > 255)
    throw ParseError(ParseErrorKind::kBadHeader, "maxval must be in [1, 255]");
  if (width * height > (1L << 28))
    throw ParseError(ParseErrorKind::kBadHeader, "image is too large");

  GrayImage image(static_cast<int>(width), static_cast<int>(height));
  const double scale = static_cast<double>(maxval);
  auto pixels = image.pixels();
  if (binary) {
    header.end_binary_header();
    const std::size_t offset = header.position();
    if (bytes.size() - offset < pixels.size())
      throw ParseError(ParseErrorKind::kTruncatedPayload,
                       "payload has " + std::to_string(bytes.size() - offset) +
                           " bytes, expected " + std::to_string(pixels.size()));
    for (std::size_t i = 0; i < pixels.size(); ++i) {
      const auto v = static_cast<unsigned char>(bytes[offset + i]);
      if (v > maxval) throw ParseError(ParseErrorKind::kBadValue, "sample exceeds maxval");
      pixels[i] = v / scale;
    }
  } else {
    for (std::size_t i = 0; i < pixels.size(); ++i) {
      long v = 0;
      try {
        v = header.next_number("sample");
      } catch (const ParseError& e) {
        if (header.position() >= bytes.size())
          throw ParseError(ParseErrorKind::kTruncatedPayload,
                           "payload ends after " + std::to_string(i) + " samples");
        throw ParseError(ParseErrorKind::kBadValue, e.what());
      }
      if (v > maxval) throw ParseError(ParseErrorKind::kBadValue, "sample exceeds maxval");
      pixels[i] = static_cast<double>(v) / scale;
    }
  }
  return image;
}

std::uint8_t to_byte(double intensity) {
  if (!(intensity > 0.0)) return 0;
  if (intensity >= 1.0) return 255;
  return static_cast<std::uint8_t>(std::floor(intensity * 255.0 + 0.5));
}

std::string encode_pgm(const GrayImage& image) {
  std::string out = "P5\n" + std::to_string(image.width()) + " " +
                    std::to_string(image.height()) + "\n255\n";
  out.reserve(out.size() + image.size());
  for (double v : image.pixels()) out.push_back(static_cast<char>(to_byte(v)));
  return out;
}

RgbImage gray_to_rgb(const GrayImage& image) {
  RgbImage out(image.width(), image.height());
  for (std::size_t i = 0; i < image.size(); ++i) {
    const std::uint8_t b = to_byte(image.pixels()[i]);
    out.pixels()[i] = {b, b, b};
  }
  return out;
}

std::string encode_ppm(const RgbImage& image) {
  std::string out = "P6\n" + std::to_string(image.width()) + " " +
                    std::to_string(image.height()) + "\n255\n";
  out.reserve(out.size() + 3 * image.size());
  for (const Rgb& px : image.pixels())
    for (std::uint8_t c : px) out.push_back(static_cast<char>(c));
  return out;
}

}  // namespace hybridsim
