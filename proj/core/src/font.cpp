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

#include "invsynth/font.hpp"

#include <algorithm>
#include <array>
#include <cstring>
#include <fstream>
#include <iterator>
#include <optional>
#include <string>
#include <utility>

#include "invsynth/error.hpp"

namespace invsynth {

namespace {

constexpr std::uint32_t tag(const char (&s)[5]) {
  return (static_cast<std::uint32_t>(static_cast<unsigned char>(s[0])) << 24) |
         (static_cast<std::uint32_t>(static_cast<unsigned char>(s[1])) << 16) |
         (static_cast<std::uint32_t>(static_cast<unsigned char>(s[2])) << 8) |
         static_cast<std::uint32_t>(static_cast<unsigned char>(s[3]));
}

// Simple-glyph point flags.
constexpr std::uint8_t kOnCurve = 0x01;
constexpr std::uint8_t kXShort = 0x02;
constexpr std::uint8_t kYShort = 0x04;
constexpr std::uint8_t kRepeat = 0x08;
constexpr std::uint8_t kXSameOrPositive = 0x10;
constexpr std::uint8_t kYSameOrPositive = 0x20;

// Composite-glyph component flags.
constexpr std::uint16_t kArgsAreWords = 0x0001;
constexpr std::uint16_t kArgsAreXY = 0x0002;
constexpr std::uint16_t kHaveScale = 0x0008;
constexpr std::uint16_t kMoreComponents = 0x0020;
constexpr std::uint16_t kHaveXYScale = 0x0040;
constexpr std::uint16_t kHaveTwoByTwo = 0x0080;

constexpr int kMaxCompositeDepth = 8;

/// Bounds-checked big-endian reader over the font bytes.
class Reader {
 public:
  explicit Reader(const std::vector<std::uint8_t>& bytes) : bytes_(bytes) {}

  std::uint8_t u8(std::size_t at) const {
    need(at, 1);
    return bytes_[at];
  }
  std::int8_t i8(std::size_t at) const { return static_cast<std::int8_t>(u8(at)); }
  std::uint16_t u16(std::size_t at) const {
    need(at, 2);
    return static_cast<std::uint16_t>((bytes_[at] << 8) | bytes_[at + 1]);
  }
  std::int16_t i16(std::size_t at) const { return static_cast<std::int16_t>(u16(at)); }
  std::uint32_t u32(std::size_t at) const {
    need(at, 4);
    return (static_cast<std::uint32_t>(bytes_[at]) << 24) |
           (static_cast<std::uint32_t>(bytes_[at + 1]) << 16) |
           (static_cast<std::uint32_t>(bytes_[at + 2]) << 8) |
           static_cast<std::uint32_t>(bytes_[at + 3]);
  }
  double f2dot14(std::size_t at) const { return i16(at) / 16384.0; }
  std::size_t size() const noexcept { return bytes_.size(); }

 private:
  void need(std::size_t at, std::size_t n) const {
    if (at > bytes_.size() || bytes_.size() - at < n) {
      throw FontError("truncated font data at offset " + std::to_string(at));
    }
  }
  const std::vector<std::uint8_t>& bytes_;
};

struct KernPair {
  std::uint32_t key;
  std::int16_t value;
};

}  // namespace

struct FontFace::Data {
  std::vector<std::uint8_t> bytes;
  int units_per_em = 0;
  int ascent = 0;
  int descent = 0;
  int num_glyphs = 0;
  int num_hmetrics = 0;
  bool long_loca = false;
  std::size_t hmtx = 0;
  std::size_t loca = 0;
  std::size_t glyf = 0;
  std::size_t glyf_length = 0;
  std::size_t cmap = 0;  // selected subtable
  int cmap_format = 0;
  std::vector<KernPair> kern;  // sorted by key

  Reader reader() const { return Reader(bytes); }

  std::pair<std::size_t, std::size_t> glyph_range(GlyphId g) const;
  void append_outline(GlyphId g, GlyphOutline& out, int depth) const;
};

namespace {

struct TableRecord {
  std::size_t offset = 0;
  std::size_t length = 0;
};

std::optional<TableRecord> find_table(const Reader& r, std::uint32_t wanted) {
  const auto num_tables = r.u16(4);
  for (std::size_t i = 0; i < num_tables; ++i) {
    const std::size_t rec = 12 + 16 * i;
    if (r.u32(rec) == wanted) {
      TableRecord t{r.u32(rec + 8), r.u32(rec + 12)};
      if (t.offset > r.size() || r.size() - t.offset < t.length) {
        throw FontError("table extends past end of file");
      }
      return t;
    }
  }
  return std::nullopt;
}

TableRecord require_table(const Reader& r, const char (&name)[5]) {
  auto t = find_table(r, tag(name));
  if (!t) throw FontError(std::string("font lacks required table '") + name + "'");
  return *t;
}

void select_cmap(const Reader& r, std::size_t cmap, FontFace::Data& d) {
  const auto count = r.u16(cmap + 2);
  struct Candidate {
    int rank;
    std::size_t offset;
    int format;
  };
  std::optional<Candidate> best;
  for (std::size_t i = 0; i < count; ++i) {
    const std::size_t rec = cmap + 4 + 8 * i;
    const auto platform = r.u16(rec);
    const auto encoding = r.u16(rec + 2);
    const std::size_t offset = cmap + r.u32(rec + 4);
    const int format = r.u16(offset);
    if (format != 4 && format != 12) continue;
    int rank = 0;
    if (platform == 3 && encoding == 10 && format == 12) rank = 5;
    else if (platform == 0 && format == 12) rank = 4;
    else if (platform == 3 && encoding == 1 && format == 4) rank = 3;
    else if (platform == 0 && format == 4) rank = 2;
    else rank = 1;
    if (!best || rank > best->rank) best = Candidate{rank, offset, format};
  }
  if (!best) throw FontError("font has no usable Unicode cmap (format 4 or 12)");
  d.cmap = best->offset;
  d.cmap_format = best->format;
}

void load_kern(const Reader& r, std::size_t kern, FontFace::Data& d) {
  if (r.u16(kern) != 0) return;  // Apple-style table; not supported
  const auto count = r.u16(kern + 2);
  std::size_t at = kern + 4;
  for (std::size_t t = 0; t < count; ++t) {
    const auto length = r.u16(at + 2);
    const auto coverage = r.u16(at + 4);
    const int format = coverage >> 8;
    const bool horizontal = (coverage & 0x1) != 0;
    const bool minimum = (coverage & 0x2) != 0;
    const bool cross = (coverage & 0x4) != 0;
    if (format == 0 && horizontal && !minimum && !cross) {
      const auto pairs = r.u16(at + 6);
      for (std::size_t p = 0; p < pairs; ++p) {
        const std::size_t rec = at + 14 + 6 * p;
        d.kern.push_back({r.u32(rec), r.i16(rec + 4)});
      }
    }
    if (length == 0) break;
    at += length;
  }
  std::stable_sort(d.kern.begin(), d.kern.end(),
                   [](const KernPair& a, const KernPair& b) { return a.key < b.key; });
}

}  // namespace

std::pair<std::size_t, std::size_t> FontFace::Data::glyph_range(GlyphId g) const {
  const Reader r = reader();
  if (g >= num_glyphs) return {0, 0};
  std::size_t begin = 0;
  std::size_t end = 0;
  if (long_loca) {
    begin = r.u32(loca + 4 * static_cast<std::size_t>(g));
    end = r.u32(loca + 4 * static_cast<std::size_t>(g) + 4);
  } else {
    begin = 2 * static_cast<std::size_t>(r.u16(loca + 2 * static_cast<std::size_t>(g)));
    end = 2 * static_cast<std::size_t>(r.u16(loca + 2 * static_cast<std::size_t>(g) + 2));
  }
  if (end < begin || end > glyf_length) throw FontError("corrupt loca entry");
  return {glyf + begin, glyf + end};
}

void FontFace::Data::append_outline(GlyphId g, GlyphOutline& out, int depth) const {
  if (depth > kMaxCompositeDepth) throw FontError("composite glyph nesting too deep");
  const Reader r = reader();
  const auto [begin, end] = glyph_range(g);
  if (begin == end) return;  // no outline, e.g. space

  const int contours = r.i16(begin);
  if (contours >= 0) {
    std::vector<int> end_points(static_cast<std::size_t>(contours));
    for (int c = 0; c < contours; ++c) {
      end_points[static_cast<std::size_t>(c)] = r.u16(begin + 10 + 2 * static_cast<std::size_t>(c));
    }
    const int num_points = contours == 0 ? 0 : end_points.back() + 1;
    std::size_t at = begin + 10 + 2 * static_cast<std::size_t>(contours);
    at += 2 + r.u16(at);  // skip instructions

    std::vector<std::uint8_t> flags;
    flags.reserve(static_cast<std::size_t>(num_points));
    while (static_cast<int>(flags.size()) < num_points) {
      const auto f = r.u8(at++);
      flags.push_back(f);
      if (f & kRepeat) {
        const auto n = r.u8(at++);
        for (int k = 0; k < n && static_cast<int>(flags.size()) < num_points; ++k) {
          flags.push_back(f);
        }
      }
    }
    std::vector<int> xs(static_cast<std::size_t>(num_points));
    std::vector<int> ys(static_cast<std::size_t>(num_points));
    int value = 0;
    for (int i = 0; i < num_points; ++i) {
      const auto f = flags[static_cast<std::size_t>(i)];
      if (f & kXShort) {
        const int dx = r.u8(at++);
        value += (f & kXSameOrPositive) ? dx : -dx;
      } else if (!(f & kXSameOrPositive)) {
        value += r.i16(at);
        at += 2;
      }
      xs[static_cast<std::size_t>(i)] = value;
    }
    value = 0;
    for (int i = 0; i < num_points; ++i) {
      const auto f = flags[static_cast<std::size_t>(i)];
      if (f & kYShort) {
        const int dy = r.u8(at++);
        value += (f & kYSameOrPositive) ? dy : -dy;
      } else if (!(f & kYSameOrPositive)) {
        value += r.i16(at);
        at += 2;
      }
      ys[static_cast<std::size_t>(i)] = value;
    }
    if (at > end) throw FontError("glyph data overruns its loca range");

    int start = 0;
    for (int c = 0; c < contours; ++c) {
      const int last = end_points[static_cast<std::size_t>(c)];
      if (last < start || last >= num_points) throw FontError("bad contour end point");
      std::vector<OutlinePoint> contour;
      contour.reserve(static_cast<std::size_t>(last - start + 1));
      for (int i = start; i <= last; ++i) {
        const auto idx = static_cast<std::size_t>(i);
        contour.push_back({static_cast<double>(xs[idx]), static_cast<double>(ys[idx]),
                           (flags[idx] & kOnCurve) != 0});
      }
      if (contour.size() >= 2) out.contours.push_back(std::move(contour));
      start = last + 1;
    }
    return;
  }

  // Composite: transformed copies of other glyphs.
  std::size_t at = begin + 10;
  std::uint16_t flags = 0;
  do {
    flags = r.u16(at);
    const GlyphId component = r.u16(at + 2);
    at += 4;
    double dx = 0.0;
    double dy = 0.0;
    if (flags & kArgsAreWords) {
      if (flags & kArgsAreXY) {
        dx = r.i16(at);
        dy = r.i16(at + 2);
      }
      at += 4;
    } else {
      if (flags & kArgsAreXY) {
        dx = r.i8(at);
        dy = r.i8(at + 1);
      }
      at += 2;
    }
    // Point-matching anchors (args not XY) are treated as zero offsets.
    double a = 1.0, b = 0.0, c = 0.0, d = 1.0;
    if (flags & kHaveScale) {
      a = d = r.f2dot14(at);
      at += 2;
    } else if (flags & kHaveXYScale) {
      a = r.f2dot14(at);
      d = r.f2dot14(at + 2);
      at += 4;
    } else if (flags & kHaveTwoByTwo) {
      a = r.f2dot14(at);
      b = r.f2dot14(at + 2);
      c = r.f2dot14(at + 4);
      d = r.f2dot14(at + 6);
      at += 8;
    }
    GlyphOutline part;
    append_outline(component, part, depth + 1);
    for (auto& contour : part.contours) {
      for (auto& p : contour) {
        const double x = p.x;
        const double y = p.y;
        p.x = a * x + c * y + dx;
        p.y = b * x + d * y + dy;
      }
      out.contours.push_back(std::move(contour));
    }
  } while (flags & kMoreComponents);
}

FontFace FontFace::load(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw FontError("cannot open font " + path.string());
  std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(in)),
                                  std::istreambuf_iterator<char>());
  try {
    return from_bytes(std::move(bytes));
  } catch (const FontError& e) {
    throw FontError(path.string() + ": " + e.what());
  }
}

FontFace FontFace::from_bytes(std::vector<std::uint8_t> bytes) {
  auto data = std::make_shared<Data>();
  data->bytes = std::move(bytes);
  const Reader r = data->reader();
  const auto version = r.u32(0);
  if (version == tag("OTTO")) {
    throw FontError("CFF-flavoured OpenType fonts are not supported");
  }
  if (version != 0x00010000u && version != tag("true")) {
    throw FontError("not a TrueType font");
  }

  const auto head = require_table(r, "head");
  const auto hhea = require_table(r, "hhea");
  const auto hmtx = require_table(r, "hmtx");
  const auto maxp = require_table(r, "maxp");
  const auto loca = require_table(r, "loca");
  const auto glyf = require_table(r, "glyf");
  const auto cmap = require_table(r, "cmap");

  data->units_per_em = r.u16(head.offset + 18);
  if (data->units_per_em < 16 || data->units_per_em > 16384) {
    throw FontError("implausible unitsPerEm");
  }
  data->long_loca = r.i16(head.offset + 50) != 0;
  data->ascent = r.i16(hhea.offset + 4);
  data->descent = -r.i16(hhea.offset + 6);
  data->num_hmetrics = r.u16(hhea.offset + 34);
  data->num_glyphs = r.u16(maxp.offset + 4);
  if (data->num_hmetrics == 0 || data->num_glyphs == 0) throw FontError("font has no glyphs");
  if (hmtx.length < 4 * static_cast<std::size_t>(data->num_hmetrics)) {
    throw FontError("hmtx table too short");
  }
  const std::size_t loca_entry = data->long_loca ? 4 : 2;
  if (loca.length < loca_entry * (static_cast<std::size_t>(data->num_glyphs) + 1)) {
    throw FontError("loca table too short");
  }
  data->hmtx = hmtx.offset;
  data->loca = loca.offset;
  data->glyf = glyf.offset;
  data->glyf_length = glyf.length;
  select_cmap(r, cmap.offset, *data);
  if (auto kern = find_table(r, tag("kern"))) load_kern(r, kern->offset, *data);
  return FontFace(std::move(data));
}

int FontFace::units_per_em() const noexcept { return data_->units_per_em; }
int FontFace::ascent() const noexcept { return data_->ascent; }
int FontFace::descent() const noexcept { return data_->descent; }
int FontFace::glyph_count() const noexcept { return data_->num_glyphs; }

GlyphId FontFace::glyph_index(char32_t cp) const {
  const Reader r = data_->reader();
  const std::size_t t = data_->cmap;
  if (data_->cmap_format == 12) {
    const auto groups = r.u32(t + 12);
    std::size_t lo = 0;
    std::size_t hi = groups;
    while (lo < hi) {
      const std::size_t mid = (lo + hi) / 2;
      const std::size_t rec = t + 16 + 12 * mid;
      const auto start = r.u32(rec);
      const auto end = r.u32(rec + 4);
      if (cp < start) {
        hi = mid;
      } else if (cp > end) {
        lo = mid + 1;
      } else {
        const auto g = r.u32(rec + 8) + (cp - start);
        return g < static_cast<std::uint32_t>(data_->num_glyphs) ? static_cast<GlyphId>(g) : 0;
      }
    }
    return 0;
  }

  if (cp > 0xFFFF) return 0;
  const std::size_t seg_x2 = r.u16(t + 6);
  const std::size_t ends = t + 14;
  const std::size_t starts = ends + seg_x2 + 2;
  const std::size_t deltas = starts + seg_x2;
  const std::size_t ranges = deltas + seg_x2;
  for (std::size_t i = 0; i < seg_x2 / 2; ++i) {
    if (r.u16(ends + 2 * i) < cp) continue;
    const auto start = r.u16(starts + 2 * i);
    if (start > cp) return 0;
    const auto delta = r.u16(deltas + 2 * i);
    const auto range = r.u16(ranges + 2 * i);
    std::uint32_t g = 0;
    if (range == 0) {
      g = (cp + delta) & 0xFFFF;
    } else {
      g = r.u16(ranges + 2 * i + range + 2 * (cp - start));
      if (g != 0) g = (g + delta) & 0xFFFF;
    }
    return g < static_cast<std::uint32_t>(data_->num_glyphs) ? static_cast<GlyphId>(g) : 0;
  }
  return 0;
}

int FontFace::advance_width(GlyphId glyph) const {
  const Reader r = data_->reader();
  const int i = std::min<int>(glyph, data_->num_hmetrics - 1);
  return r.u16(data_->hmtx + 4 * static_cast<std::size_t>(i));
}

int FontFace::kerning(GlyphId left, GlyphId right) const {
  const auto& pairs = data_->kern;
  if (pairs.empty()) return 0;
  const std::uint32_t key = (static_cast<std::uint32_t>(left) << 16) | right;
  const auto it = std::lower_bound(pairs.begin(), pairs.end(), key,
                                   [](const KernPair& p, std::uint32_t k) { return p.key < k; });
  return it != pairs.end() && it->key == key ? it->value : 0;
}

GlyphOutline FontFace::outline(GlyphId glyph) const {
  GlyphOutline out;
  data_->append_outline(glyph, out, 0);
  return out;
}

}  // namespace invsynth
