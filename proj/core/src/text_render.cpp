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

#include "invsynth/text_render.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>

#include "invsynth/error.hpp"
#include "utf8.hpp"

namespace invsynth {

namespace {

struct ShapedGlyph {
  GlyphId glyph;
  std::int64_t pen_units;  // advance before this glyph, font units
};

struct ShapedRun {
  std::vector<ShapedGlyph> glyphs;
  std::int64_t advance_units = 0;
  std::vector<char32_t> missing;
};

ShapedRun shape(std::string_view text, const FontFace& face) {
  ShapedRun run;
  std::optional<GlyphId> previous;
  for (const char32_t cp : detail::decode_utf8(text)) {
    const GlyphId g = face.glyph_index(cp);
    if (g == 0) run.missing.push_back(cp);
    if (previous) run.advance_units += face.kerning(*previous, g);
    run.glyphs.push_back({g, run.advance_units});
    run.advance_units += face.advance_width(g);
    previous = g;
  }
  return run;
}

/// Font units to pixels; scaled once so integer-unit fixtures stay exact.
double to_px(std::int64_t units, int size, int upem) {
  return static_cast<double>(units) * size / upem;
}

}  // namespace

Font::Font(FontFace face, FontSpec spec) : face_(std::move(face)), spec_(std::move(spec)) {}

Font Font::load(const FontSpec& spec) {
  if (spec.min_size < 1) throw FontError("min_size must be >= 1");
  if (spec.size_step < 1) throw FontError("size_step must be >= 1");
  FontFace face = FontFace::load(spec.font_file);
  const auto require = [&](char32_t first, char32_t last) {
    for (char32_t cp = first; cp <= last; ++cp) {
      if (face.glyph_index(cp) == 0) {
        throw FontError(spec.font_file.string() + " has no glyph for U+" +
                        std::to_string(static_cast<unsigned>(cp)));
      }
    }
  };
  require(0x21, 0x7E);
  require(0xA1, 0xBF);
  return Font(std::move(face), spec);
}

TextMetrics measure_text(std::string_view text, const Font& font, int size) {
  if (size < 1) throw FontError("font size must be >= 1");
  const auto& face = font.face();
  const int upem = face.units_per_em();
  ShapedRun run = shape(text, face);
  TextMetrics m;
  m.advance_width = to_px(run.advance_units, size, upem);
  m.ascent = to_px(face.ascent(), size, upem);
  m.descent = to_px(face.descent(), size, upem);
  m.line_height = to_px(static_cast<std::int64_t>(face.ascent()) + face.descent(), size, upem);
  m.missing = std::move(run.missing);
  return m;
}

int initial_font_size(const BBox& box, const Font& font) {
  const auto& face = font.face();
  const std::int64_t line_units = static_cast<std::int64_t>(face.ascent()) + face.descent();
  if (line_units <= 0 || !(box.height() > 0.0)) return 0;
  const double h = box.height();
  const int upem = face.units_per_em();
  auto size = static_cast<int>(std::floor(h * upem / static_cast<double>(line_units)));
  size = std::max(size, 0);
  while (size > 0 && to_px(line_units, size, upem) > h) --size;
  while (to_px(line_units, size + 1, upem) <= h) ++size;
  return size;
}

int fit_font_size(std::string_view text, const BBox& box, const Font& font) {
  const int min_size = font.spec().min_size;
  const int step = font.spec().size_step;
  int size = initial_font_size(box, font);
  if (size < min_size) {
    throw FitError("box height " + std::to_string(box.height()) +
                       " px is below the line height at min_size " + std::to_string(min_size),
                   std::string(text), min_size);
  }
  const auto& face = font.face();
  const std::int64_t units = shape(text, face).advance_units;
  while (!(to_px(units, size, face.units_per_em()) < box.width())) {
    if (size == min_size) {
      throw FitError("text does not fit box width " + std::to_string(box.width()) +
                         " px at min_size " + std::to_string(min_size),
                     std::string(text), min_size);
    }
    size = std::max(size - step, min_size);
  }
  return size;
}

RenderedFragment render_fragment(RasterImage& image, const BBox& box,
                                 std::string_view text, const Font& font,
                                 int size, Rgb color) {
  if (size < 1) throw FontError("font size must be >= 1");
  const auto& face = font.face();
  const int upem = face.units_per_em();
  const ShapedRun run = shape(text, face);
  const double scale = static_cast<double>(size) / upem;
  const double advance = to_px(run.advance_units, size, upem);
  const double line_height =
      to_px(static_cast<std::int64_t>(face.ascent()) + face.descent(), size, upem);

  RenderedFragment out;
  out.text = std::string(text);
  out.size = size;
  out.color = color;
  out.missing = run.missing;
  out.origin_x = box.center_x() - advance / 2.0;
  out.baseline_y = box.center_y() + to_px(face.ascent(), size, upem) - line_height / 2.0;

  // Writable pixel squares: those inside the box grown by one pixel.
  const int cx0 = std::max(0, static_cast<int>(std::ceil(box.x_min - 1.0)));
  const int cy0 = std::max(0, static_cast<int>(std::ceil(box.y_min - 1.0)));
  const int cx1 = std::min(image.width(), static_cast<int>(std::floor(box.x_max + 1.0)));
  const int cy1 = std::min(image.height(), static_cast<int>(std::floor(box.y_max + 1.0)));
  if (cx1 <= cx0 || cy1 <= cy0) return out;
  const int cw = cx1 - cx0;
  const int ch = cy1 - cy0;
  std::vector<float> alpha(static_cast<std::size_t>(cw) * static_cast<std::size_t>(ch), 0.0f);

  for (const auto& g : run.glyphs) {
    const GlyphOutline outline = face.outline(g.glyph);
    if (outline.empty()) continue;
    const double pen_x = out.origin_x + to_px(g.pen_units, size, upem);
    const CoverageMap cov = rasterize_outline(outline, scale, pen_x, out.baseline_y);
    for (int y = 0; y < cov.height; ++y) {
      const int py = cov.top + y;
      if (py < cy0 || py >= cy1) continue;
      for (int x = 0; x < cov.width; ++x) {
        const int px = cov.left + x;
        if (px < cx0 || px >= cx1) continue;
        const float a = cov.at(x, y);
        if (a <= 0.0f) continue;
        auto& dst = alpha[static_cast<std::size_t>((py - cy0) * cw + (px - cx0))];
        dst = 1.0f - (1.0f - dst) * (1.0f - a);
      }
    }
  }

  int ink_x0 = cx1, ink_y0 = cy1, ink_x1 = cx0 - 1, ink_y1 = cy0 - 1;
  const std::uint8_t ink[3] = {color.r, color.g, color.b};
  for (int y = cy0; y < cy1; ++y) {
    for (int x = cx0; x < cx1; ++x) {
      const double a = alpha[static_cast<std::size_t>((y - cy0) * cw + (x - cx0))];
      if (a <= 0.0) continue;
      bool changed = false;
      for (int c = 0; c < 3; ++c) {
        const double bg = image.channel(x, y, c);
        const auto v = static_cast<std::uint8_t>(
            std::clamp(std::round(bg + (ink[c] - bg) * a), 0.0, 255.0));
        if (v != image.channel(x, y, c)) {
          image.set_channel(x, y, c, v);
          changed = true;
        }
      }
      if (changed) {
        ink_x0 = std::min(ink_x0, x);
        ink_y0 = std::min(ink_y0, y);
        ink_x1 = std::max(ink_x1, x);
        ink_y1 = std::max(ink_y1, y);
      }
    }
  }
  if (ink_x1 >= ink_x0) {
    out.ink_bbox = BBox{static_cast<double>(ink_x0), static_cast<double>(ink_y0),
                        static_cast<double>(ink_x1 + 1), static_cast<double>(ink_y1 + 1)};
  }
  return out;
}

Rgb estimate_text_color(const RasterImage& original, const BBox& box) {
  const int x0 = std::max(0, static_cast<int>(std::ceil(box.x_min)));
  const int y0 = std::max(0, static_cast<int>(std::ceil(box.y_min)));
  const int x1 = std::min(original.width(), static_cast<int>(std::floor(box.x_max)));
  const int y1 = std::min(original.height(), static_cast<int>(std::floor(box.y_max)));
  if (x1 <= x0 || y1 <= y0) return {};
  const auto n = static_cast<std::size_t>(x1 - x0) * static_cast<std::size_t>(y1 - y0);
  if (n < 16) return {};

  struct Sample {
    int luma;  // BT.601, scaled by 1000
    Rgb rgb;
  };
  std::vector<Sample> samples;
  samples.reserve(n);
  for (int y = y0; y < y1; ++y) {
    for (int x = x0; x < x1; ++x) {
      const Rgb p = original.at(x, y);
      samples.push_back({299 * p.r + 587 * p.g + 114 * p.b, p});
    }
  }
  const std::size_t k = (n + 3) / 4;
  std::stable_sort(samples.begin(), samples.end(),
                   [](const Sample& a, const Sample& b) { return a.luma < b.luma; });
  std::uint64_t sum[3] = {0, 0, 0};
  for (std::size_t i = 0; i < k; ++i) {
    sum[0] += samples[i].rgb.r;
    sum[1] += samples[i].rgb.g;
    sum[2] += samples[i].rgb.b;
  }
  const auto mean = [&](std::uint64_t s) {
    return static_cast<std::uint8_t>((s + k / 2) / k);
  };
  return {mean(sum[0]), mean(sum[1]), mean(sum[2])};
}

}  // namespace invsynth
