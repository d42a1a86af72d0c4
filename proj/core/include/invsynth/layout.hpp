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

// Canonical layout model: the OCR-independent description of one page as a
// list of text fragments with pixel bounding boxes.

#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace invsynth {

/// Axis-aligned rectangle in pixels; top-left origin, y grows downward.
struct BBox {
  double x_min = 0.0;
  double y_min = 0.0;
  double x_max = 0.0;
  double y_max = 0.0;

  double width() const noexcept { return x_max - x_min; }
  double height() const noexcept { return y_max - y_min; }
  double center_x() const noexcept { return 0.5 * (x_min + x_max); }
  double center_y() const noexcept { return 0.5 * (y_min + y_max); }

  /// Grows (or shrinks, for negative `amount`) every side.
  BBox expanded(double amount) const noexcept {
    return {x_min - amount, y_min - amount, x_max + amount, y_max + amount};
  }
  bool contains(const BBox& other) const noexcept {
    return other.x_min >= x_min && other.y_min >= y_min &&
           other.x_max <= x_max && other.y_max <= y_max;
  }

  bool operator==(const BBox&) const = default;
};

enum class ContentClass {
  kDate,
  kCurrencyAmount,
  kNumericId,
  kEmail,
  kPhone,
  kFreeText,
};

/// Wire names: date, currency_amount, numeric_id, email, phone, free_text.
std::string_view to_string(ContentClass cls) noexcept;
std::optional<ContentClass> content_class_from_string(std::string_view name);

struct TextFragment {
  std::string id;
  std::string text;
  BBox bbox;
  ContentClass content_class = ContentClass::kFreeText;
  bool replace = false;

  bool operator==(const TextFragment&) const = default;
};

struct LayoutDocument {
  int page_width = 0;
  int page_height = 0;
  std::string source_image_ref;
  std::vector<TextFragment> fragments;  // reading order

  const TextFragment* find(std::string_view id) const;

  bool operator==(const LayoutDocument&) const = default;
};

struct LayoutViolation {
  std::string fragment_id;  // empty for page-level rules
  std::string field;
  std::string rule;
  std::string value;

  /// Human-readable one-liner, e.g. "x_min ≥ x_max on frag_000".
  std::string message() const;
};

/// Strict parser for the canonical layout JSON. Rejects anything that does
/// not satisfy every document invariant; never repairs.
LayoutDocument parse_layout(std::string_view text);

/// Deterministic canonical text: fixed key order, 2-space indent, shortest
/// round-trip numbers, trailing newline.
std::string serialize_layout(const LayoutDocument& doc);

std::vector<LayoutViolation> validate_layout(const LayoutDocument& doc);

LayoutDocument read_layout_file(const std::filesystem::path& path);
void write_layout_file(const std::filesystem::path& path,
                       const LayoutDocument& doc);

}  // namespace invsynth
