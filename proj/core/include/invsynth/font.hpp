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

// Minimal TrueType (glyf) reader and anti-aliased outline rasteriser.
// Supports cmap formats 4 and 12, simple and composite glyphs, and legacy
// 'kern' format 0 pair kerning. Hinting is ignored.

#pragma once

#include <cstdint>
#include <filesystem>
#include <memory>
#include <vector>

namespace invsynth {

using GlyphId = std::uint16_t;

struct OutlinePoint {
  double x = 0.0;
  double y = 0.0;  // font units, y up
  bool on_curve = true;
};

/// Closed quadratic contours in font units.
struct GlyphOutline {
  std::vector<std::vector<OutlinePoint>> contours;

  bool empty() const noexcept { return contours.empty(); }
};

class FontFace {
 public:
  static FontFace load(const std::filesystem::path& path);
  static FontFace from_bytes(std::vector<std::uint8_t> bytes);

  int units_per_em() const noexcept;
  /// Distance above the baseline, font units, positive.
  int ascent() const noexcept;
  /// Distance below the baseline, font units, positive.
  int descent() const noexcept;
  int glyph_count() const noexcept;

  /// 0 (.notdef) when the font has no glyph for `codepoint`.
  GlyphId glyph_index(char32_t codepoint) const;
  int advance_width(GlyphId glyph) const;
  int kerning(GlyphId left, GlyphId right) const;
  GlyphOutline outline(GlyphId glyph) const;

  struct Data;  // opaque

 private:
  explicit FontFace(std::shared_ptr<const Data> data) : data_(std::move(data)) {}
  std::shared_ptr<const Data> data_;
};

/// Per-pixel coverage in [0, 1] over a rectangle of the target raster.
struct CoverageMap {
  int left = 0;
  int top = 0;
  int width = 0;
  int height = 0;
  std::vector<float> coverage;  // row-major

  float at(int x, int y) const {
    return coverage[static_cast<std::size_t>(y * width + x)];
  }
};

/// Rasterises `outline` scaled by `scale` pixels per font unit with its
/// origin at (origin_x, baseline_y) in raster pixels (y down). Coverage is
/// exact signed-area accumulation over line segments; curves are flattened.
CoverageMap rasterize_outline(const GlyphOutline& outline, double scale,
                              double origin_x, double baseline_y);

}  // namespace invsynth
