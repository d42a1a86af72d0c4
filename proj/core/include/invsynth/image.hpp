// Copyright 2026 The invsynth Authors
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

#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <vector>

namespace invsynth {

struct Rgb {
  std::uint8_t r = 0;
  std::uint8_t g = 0;
  std::uint8_t b = 0;

  bool operator==(const Rgb&) const = default;
};

/// Row-major interleaved 8-bit RGB.
class RasterImage {
 public:
  RasterImage() = default;
  RasterImage(int width, int height, Rgb fill = {});
  RasterImage(int width, int height, std::vector<std::uint8_t> pixels);

  int width() const noexcept { return width_; }
  int height() const noexcept { return height_; }
  bool empty() const noexcept { return pixels_.empty(); }

  Rgb at(int x, int y) const noexcept {
    const auto* p = &pixels_[offset(x, y)];
    return {p[0], p[1], p[2]};
  }
  void set(int x, int y, Rgb c) noexcept {
    auto* p = &pixels_[offset(x, y)];
    p[0] = c.r;
    p[1] = c.g;
    p[2] = c.b;
  }
  std::uint8_t channel(int x, int y, int c) const noexcept {
    return pixels_[offset(x, y) + static_cast<std::size_t>(c)];
  }
  void set_channel(int x, int y, int c, std::uint8_t v) noexcept {
    pixels_[offset(x, y) + static_cast<std::size_t>(c)] = v;
  }

  std::span<const std::uint8_t> pixels() const noexcept { return pixels_; }
  std::span<std::uint8_t> pixels() noexcept { return pixels_; }

  bool operator==(const RasterImage&) const = default;

 private:
  std::size_t offset(int x, int y) const noexcept {
    return (static_cast<std::size_t>(y) * static_cast<std::size_t>(width_) +
            static_cast<std::size_t>(x)) * 3;
  }

  int width_ = 0;
  int height_ = 0;
  std::vector<std::uint8_t> pixels_;
};

/// Single-channel binary mask: 0 = keep, 255 = inpaint.
class Mask {
 public:
  static constexpr std::uint8_t kKeep = 0;
  static constexpr std::uint8_t kFill = 255;

  Mask() = default;
  Mask(int width, int height);

  int width() const noexcept { return width_; }
  int height() const noexcept { return height_; }

  bool is_set(int x, int y) const noexcept { return values_[index(x, y)] != kKeep; }
  std::uint8_t at(int x, int y) const noexcept { return values_[index(x, y)]; }
  void set(int x, int y) noexcept { values_[index(x, y)] = kFill; }

  std::size_t count() const noexcept;
  std::span<const std::uint8_t> values() const noexcept { return values_; }

  bool operator==(const Mask&) const = default;

 private:
  std::size_t index(int x, int y) const noexcept {
    return static_cast<std::size_t>(y) * static_cast<std::size_t>(width_) +
           static_cast<std::size_t>(x);
  }

  int width_ = 0;
  int height_ = 0;
  std::vector<std::uint8_t> values_;
};

/// Decodes any 8/16-bit PNG to 8-bit RGB. Alpha is composited over white,
/// grey and palette images are expanded.
RasterImage read_png(const std::filesystem::path& path);

/// Encoder settings are pinned (zlib level 9, adaptive filtering, no
/// timestamp chunk) so identical pixels produce identical files.
void write_png(const std::filesystem::path& path, const RasterImage& image);
void write_mask_png(const std::filesystem::path& path, const Mask& mask);

}  // namespace invsynth
