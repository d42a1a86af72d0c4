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

#include "invsynth/layout.hpp"

#include <array>
#include <cmath>
#include <limits>
#include <set>
#include <utility>

#include "invsynth/error.hpp"
#include "json.hpp"
#include "json_util.hpp"
#include "utf8.hpp"

namespace invsynth {

namespace {

using detail::ordered_json;

constexpr std::array<std::pair<ContentClass, std::string_view>, 6> kClassNames{{
    {ContentClass::kDate, "date"},
    {ContentClass::kCurrencyAmount, "currency_amount"},
    {ContentClass::kNumericId, "numeric_id"},
    {ContentClass::kEmail, "email"},
    {ContentClass::kPhone, "phone"},
    {ContentClass::kFreeText, "free_text"},
}};

bool is_fragment_id(std::string_view id) {
  constexpr std::string_view kPrefix = "frag_";
  if (id.size() < kPrefix.size() + 3 || id.substr(0, kPrefix.size()) != kPrefix)
    return false;
  for (char c : id.substr(kPrefix.size())) {
    if (c < '0' || c > '9') return false;
  }
  return true;
}

std::string fmt_number(double v) { return ordered_json(v).dump(); }

void check_keys(const ordered_json& object,
                std::initializer_list<std::string_view> allowed,
                const std::string& fragment_id, const std::string& where) {
  for (const auto& item : object.items()) {
    bool known = false;
    for (auto key : allowed) known = known || item.key() == key;
    if (!known) {
      throw LayoutError("unknown key '" + item.key() + "' in " + where +
                            (fragment_id.empty() ? "" : " on " + fragment_id),
                        fragment_id, item.key());
    }
  }
}

const ordered_json& require(const ordered_json& object, const char* key,
                            const std::string& fragment_id) {
  auto it = object.find(key);
  if (it == object.end()) {
    throw LayoutError(std::string("missing required field '") + key + "'" +
                          (fragment_id.empty() ? "" : " on " + fragment_id),
                      fragment_id, key);
  }
  return *it;
}

[[noreturn]] void type_error(const char* key, const char* expected,
                             const std::string& fragment_id) {
  throw LayoutError(std::string("field '") + key + "' must be " + expected +
                        (fragment_id.empty() ? "" : " on " + fragment_id),
                    fragment_id, key);
}

int require_int(const ordered_json& object, const char* key) {
  const auto& v = require(object, key, {});
  if (!v.is_number_integer()) type_error(key, "an integer", {});
  const auto wide = v.get<long long>();
  if (wide > std::numeric_limits<int>::max() ||
      wide < std::numeric_limits<int>::min()) {
    type_error(key, "a 32-bit integer", {});
  }
  return static_cast<int>(wide);
}

std::string require_string(const ordered_json& object, const char* key,
                           const std::string& fragment_id) {
  const auto& v = require(object, key, fragment_id);
  if (!v.is_string()) type_error(key, "a string", fragment_id);
  return v.get<std::string>();
}

double require_number(const ordered_json& object, const char* key,
                      const std::string& fragment_id) {
  const auto& v = require(object, key, fragment_id);
  if (!v.is_number()) type_error(key, "a number", fragment_id);
  return v.get<double>();
}

TextFragment parse_fragment(const ordered_json& node, std::size_t index) {
  const std::string where = "fragments[" + std::to_string(index) + "]";
  if (!node.is_object()) {
    throw LayoutError(where + " must be an object", {}, "fragments");
  }
  TextFragment frag;
  {
    const auto& id = require(node, "id", {});
    if (!id.is_string()) type_error("id", "a string", {});
    frag.id = id.get<std::string>();
  }
  check_keys(node, {"id", "text", "bbox", "content_class", "replace"},
             frag.id, "fragment");
  frag.text = require_string(node, "text", frag.id);

  const auto& box = require(node, "bbox", frag.id);
  if (!box.is_object()) type_error("bbox", "an object", frag.id);
  check_keys(box, {"x_min", "y_min", "x_max", "y_max"}, frag.id, "bbox");
  frag.bbox.x_min = require_number(box, "x_min", frag.id);
  frag.bbox.y_min = require_number(box, "y_min", frag.id);
  frag.bbox.x_max = require_number(box, "x_max", frag.id);
  frag.bbox.y_max = require_number(box, "y_max", frag.id);

  const auto cls_name = require_string(node, "content_class", frag.id);
  const auto cls = content_class_from_string(cls_name);
  if (!cls) {
    throw LayoutError("unknown content_class '" + cls_name + "' on " + frag.id,
                      frag.id, "content_class");
  }
  frag.content_class = *cls;

  const auto& replace = require(node, "replace", frag.id);
  if (!replace.is_boolean()) type_error("replace", "a boolean", frag.id);
  frag.replace = replace.get<bool>();
  return frag;
}

}  // namespace

std::string_view to_string(ContentClass cls) noexcept {
  for (const auto& [value, name] : kClassNames) {
    if (value == cls) return name;
  }
  return "free_text";
}

std::optional<ContentClass> content_class_from_string(std::string_view name) {
  for (const auto& [value, n] : kClassNames) {
    if (n == name) return value;
  }
  return std::nullopt;
}

const TextFragment* LayoutDocument::find(std::string_view id) const {
  for (const auto& f : fragments) {
    if (f.id == id) return &f;
  }
  return nullptr;
}

std::string LayoutViolation::message() const {
  std::string where = fragment_id.empty() ? "page" : fragment_id;
  if (rule == "inverted_bbox") {
    const char* lo = field == "y" ? "y_min" : "x_min";
    const char* hi = field == "y" ? "y_max" : "x_max";
    return std::string(lo) + " ≥ " + hi + " on " + where;
  }
  return rule + " on " + where + " (" + field + " = " + value + ")";
}

std::vector<LayoutViolation> validate_layout(const LayoutDocument& doc) {
  std::vector<LayoutViolation> out;
  if (doc.page_width <= 0) {
    out.push_back({"", "page_width", "nonpositive_page_size",
                   std::to_string(doc.page_width)});
  }
  if (doc.page_height <= 0) {
    out.push_back({"", "page_height", "nonpositive_page_size",
                   std::to_string(doc.page_height)});
  }

  std::set<std::string> seen;
  for (const auto& f : doc.fragments) {
    if (!is_fragment_id(f.id)) {
      out.push_back({f.id, "id", "invalid_id", f.id});
    }
    if (!seen.insert(f.id).second) {
      out.push_back({f.id, "id", "duplicate_id", f.id});
    }
    if (detail::trim(f.text).empty()) {
      out.push_back({f.id, "text", "empty_text", f.text});
    }
    if (detail::has_line_break(f.text)) {
      out.push_back({f.id, "text", "line_break_in_text", f.text});
    }

    const auto& b = f.bbox;
    const std::array<std::pair<const char*, double>, 4> coords{{
        {"x_min", b.x_min}, {"y_min", b.y_min},
        {"x_max", b.x_max}, {"y_max", b.y_max}}};
    bool finite = true;
    for (const auto& [name, v] : coords) {
      if (!std::isfinite(v)) {
        out.push_back({f.id, name, "non_finite_coordinate", fmt_number(v)});
        finite = false;
      } else if (v < 0.0) {
        out.push_back({f.id, name, "negative_coordinate", fmt_number(v)});
      }
    }
    if (!finite) continue;
    if (b.x_min >= b.x_max) {
      out.push_back({f.id, "x", "inverted_bbox",
                     fmt_number(b.x_min) + " ≥ " + fmt_number(b.x_max)});
    }
    if (b.y_min >= b.y_max) {
      out.push_back({f.id, "y", "inverted_bbox",
                     fmt_number(b.y_min) + " ≥ " + fmt_number(b.y_max)});
    }
    if (doc.page_width > 0) {
      if (b.x_max > doc.page_width) {
        out.push_back({f.id, "x_max", "out_of_page", fmt_number(b.x_max)});
      }
      if (b.x_min > doc.page_width) {
        out.push_back({f.id, "x_min", "out_of_page", fmt_number(b.x_min)});
      }
    }
    if (doc.page_height > 0) {
      if (b.y_max > doc.page_height) {
        out.push_back({f.id, "y_max", "out_of_page", fmt_number(b.y_max)});
      }
      if (b.y_min > doc.page_height) {
        out.push_back({f.id, "y_min", "out_of_page", fmt_number(b.y_min)});
      }
    }
  }
  return out;
}

LayoutDocument parse_layout(std::string_view text) {
  ordered_json root;
  try {
    root = ordered_json::parse(text.begin(), text.end());
  } catch (const ordered_json::parse_error& e) {
    throw LayoutError(std::string("malformed layout syntax: ") + e.what());
  }
  if (!root.is_object()) {
    throw LayoutError("layout document must be a JSON object");
  }
  check_keys(root, {"page_width", "page_height", "source_image_ref", "fragments"},
             {}, "document");

  LayoutDocument doc;
  doc.page_width = require_int(root, "page_width");
  doc.page_height = require_int(root, "page_height");
  doc.source_image_ref = require_string(root, "source_image_ref", {});
  const auto& frags = require(root, "fragments", {});
  if (!frags.is_array()) type_error("fragments", "an array", {});
  doc.fragments.reserve(frags.size());
  for (std::size_t i = 0; i < frags.size(); ++i) {
    doc.fragments.push_back(parse_fragment(frags[i], i));
  }

  const auto violations = validate_layout(doc);
  if (!violations.empty()) {
    const auto& v = violations.front();
    throw LayoutError(v.message(), v.fragment_id, v.field);
  }
  return doc;
}

std::string serialize_layout(const LayoutDocument& doc) {
  ordered_json root = ordered_json::object();
  root["page_width"] = doc.page_width;
  root["page_height"] = doc.page_height;
  root["source_image_ref"] = doc.source_image_ref;
  ordered_json frags = ordered_json::array();
  for (const auto& f : doc.fragments) {
    ordered_json node = ordered_json::object();
    node["id"] = f.id;
    node["text"] = f.text;
    node["bbox"] = detail::to_json(f.bbox);
    node["content_class"] = std::string(to_string(f.content_class));
    node["replace"] = f.replace;
    frags.push_back(std::move(node));
  }
  root["fragments"] = std::move(frags);
  return detail::dump_canonical(root);
}

LayoutDocument read_layout_file(const std::filesystem::path& path) {
  std::string text;
  try {
    text = detail::read_file(path);
  } catch (const Error& e) {
    throw LayoutError(e.what());
  }
  return parse_layout(text);
}

void write_layout_file(const std::filesystem::path& path,
                       const LayoutDocument& doc) {
  detail::write_file(path, serialize_layout(doc));
}

}  // namespace invsynth
