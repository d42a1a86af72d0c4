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

// Font fitting and centred single-line rendering. Sizes are whole points and
// one point is one pixel.

#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "invsynth/font.hpp"
#include "invsynth/image.hpp"
#include "invsynth/layout.hpp"

namespace invsynth {

struct FontSpec {
  std::filesystem::path font_file;
  int min_size = 6;
  int size_step = 1;
};

/// A loaded face plus its fitting parameters.
class Font {
 public:
  /// Loads and checks the face: min_size >= 1, size_step >= 1, and glyphs
  /// for printable ASCII and the Latin-1 punctuation block. Throws FontError.
  static Font load(const FontSpec& spec);
  Font(FontFace face, FontSpec spec);

  const FontFace& face() const noexcept { return face_; }
  const FontSpec& spec() const noexcept { return spec_; }

 private:
  FontFace face_;
  FontSpec spec_;
};

struct TextMetrics {
  double advance_width = 0.0;  // pixels, kerning included
  double line_height = 0.0;    // ascent + descent, pixels
  double ascent = 0.0;
  double descent = 0.0;
  /// Code points drawn with the replacement glyph, in order of appearance.
  std::vector<char32_t> missing;
};

/// Throws FontError if size < 1.
TextMetrics measure_text(std::string_view text, const Font& font, int size);

/// Largest whole size whose line height fits the box height; 0 if none.
int initial_font_size(const BBox& box, const Font& font);

/// Starts at initial_font_size and steps down while the advance width is
/// not strictly below the box width. Throws FitError when even min_size
/// does not fit.
int fit_font_size(std::string_view text, const BBox& box, const Font& font);

struct RenderedFragment {
  std::string fragment_id;
  std::string text;
  int size = 0;
  double origin_x = 0.0;   // left end of the advance
  double baseline_y = 0.0;
  /// Union of the pixel squares the draw changed; empty if none changed.
  std::optional<BBox> ink_bbox;
  Rgb color;
  std::vector<char32_t> missing;
};

/// Draws `text` at `size` centred in `box`, alpha-blending `color` over the
/// image. Only pixels whose squares lie inside box.expanded(1) are written.
RenderedFragment render_fragment(RasterImage& image, const BBox& box,
                                 std::string_view text, const Font& font,
                                 int size, Rgb color);

/// Mean colour of the darkest quarter of the pixels inside `box`, by luma.
/// Black when the box holds fewer than 16 whole pixels.
Rgb estimate_text_color(const RasterImage& original, const BBox& box);

}  // namespace invsynth
