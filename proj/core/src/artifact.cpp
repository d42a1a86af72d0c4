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

// Artifact file formats and the pairing checker.

#include <map>
#include <set>

#include "invsynth/error.hpp"
#include "invsynth/pipeline.hpp"
#include "json_util.hpp"
#include "utf8.hpp"

namespace invsynth {

namespace {

using detail::ordered_json;
namespace fs = std::filesystem;

ordered_json read_json(const fs::path& path) {
  const std::string text = detail::read_file(path);
  try {
    return ordered_json::parse(text);
  } catch (const ordered_json::parse_error& e) {
    throw Error("cannot parse " + path.string() + ": " + e.what());
  }
}

std::string string_field(const ordered_json& node, const char* key, const fs::path& file) {
  if (!node.is_object() || !node.contains(key) || !node.at(key).is_string()) {
    throw Error(file.string() + ": expected string field '" + key + "'");
  }
  return node.at(key).get<std::string>();
}

const ordered_json& array_field(const ordered_json& node, const char* key, const fs::path& file) {
  if (!node.is_object() || !node.contains(key) || !node.at(key).is_array()) {
    throw Error(file.string() + ": expected array field '" + key + "'");
  }
  return node.at(key);
}

}  // namespace

std::string ground_truth_json(const Synthesis& s) {
  ordered_json fields = ordered_json::object();
  std::map<std::string, std::vector<std::string>> roles;
  std::vector<std::string> role_order;
  for (const auto& f : s.fragments) {
    fields[f.fragment_id] = f.rendered_text;
    if (f.role.empty()) continue;
    if (!roles.contains(f.role)) role_order.push_back(f.role);
    roles[f.role].push_back(f.rendered_text);
  }
  ordered_json root = ordered_json::object();
  root["fields"] = fields;
  if (!role_order.empty()) {
    ordered_json by_role = ordered_json::object();
    for (const auto& role : role_order) {
      const auto& values = roles[role];
      if (values.size() == 1) by_role[role] = values.front();
      else by_role[role] = values;
    }
    root["roles"] = by_role;
  }
  return detail::dump_canonical(root);
}

std::string annotations_json(const Synthesis& s) {
  std::map<std::string, const FragmentOutcome*> replaced;
  for (const auto& f : s.fragments) replaced[f.fragment_id] = &f;

  ordered_json fragments = ordered_json::array();
  for (const auto& frag : s.layout.fragments) {
    const auto it = replaced.find(frag.id);
    ordered_json node = ordered_json::object();
    node["id"] = frag.id;
    node["text"] = it != replaced.end() ? it->second->rendered_text : frag.text;
    node["bbox"] = detail::to_json(frag.bbox);
    node["content_class"] = std::string(to_string(frag.content_class));
    node["replaced"] = it != replaced.end();
    fragments.push_back(std::move(node));
  }
  ordered_json root = ordered_json::object();
  root["image"] = kImageFile;
  root["page_width"] = s.layout.page_width;
  root["page_height"] = s.layout.page_height;
  root["fragments"] = std::move(fragments);
  return detail::dump_canonical(root);
}

std::string report_json(const Synthesis& s, std::uint64_t seed, int variant,
                        const PipelineConfig& config) {
  ordered_json root = ordered_json::object();
  root["variant"] = variant;
  root["seed"] = seed;
  root["status"] = s.no_op() ? "no-op" : "ok";
  root["generator_mode"] = config.generator.mode == GeneratorMode::kMock ? "mock" : "remote";
  if (config.generator.mode == GeneratorMode::kRemote) root["model"] = config.generator.model;

  ordered_json warnings = ordered_json::array();
  for (const auto& w : s.warnings) {
    ordered_json node = ordered_json::object();
    node["kind"] = w.kind;
    node["fragment_id"] = w.fragment_id;
    node["message"] = w.message;
    warnings.push_back(std::move(node));
  }
  root["warnings"] = std::move(warnings);

  ordered_json fragments = ordered_json::array();
  for (const auto& f : s.fragments) {
    ordered_json node = ordered_json::object();
    node["id"] = f.fragment_id;
    node["original_text"] = f.original_text;
    node["rendered_text"] = f.rendered_text;
    node["content_class"] = std::string(to_string(f.content_class));
    if (!f.role.empty()) node["role"] = f.role;
    node["font_size"] = f.font_size;
    ordered_json origin = ordered_json::object();
    origin["x"] = f.origin_x;
    origin["baseline_y"] = f.baseline_y;
    node["draw_origin"] = std::move(origin);
    node["ink_bbox"] = f.ink_bbox ? detail::to_json(*f.ink_bbox) : ordered_json(nullptr);
    node["color"] = ordered_json::array({f.color.r, f.color.g, f.color.b});
    node["fit_warning"] = f.fit_warning;
    fragments.push_back(std::move(node));
  }
  root["fragments"] = std::move(fragments);

  if (config.report_timings) {
    ordered_json timings = ordered_json::object();
    for (const auto& [stage, ms] : s.timings_ms) timings[stage] = ms;
    root["timings_ms"] = std::move(timings);
  }
  return detail::dump_canonical(root);
}

std::vector<ArtifactViolation> verify_artifact(const fs::path& dir,
                                               const LayoutDocument& layout) {
  const fs::path gt_path = dir / kGroundTruthFile;
  const fs::path ann_path = dir / kAnnotationsFile;
  const fs::path report_path = dir / kReportFile;
  const ordered_json gt = read_json(gt_path);
  const ordered_json ann = read_json(ann_path);
  const ordered_json report = read_json(report_path);

  std::vector<ArtifactViolation> out;

  // Planned fragments and what the renderer drew for each.
  std::vector<std::string> planned;
  std::map<std::string, std::string> rendered;
  for (const auto& node : array_field(report, "fragments", report_path)) {
    const auto id = string_field(node, "id", report_path);
    planned.push_back(id);
    rendered[id] = string_field(node, "rendered_text", report_path);
  }

  if (!gt.is_object() || !gt.contains("fields") || !gt.at("fields").is_object()) {
    throw Error(gt_path.string() + ": expected object field 'fields'");
  }
  const auto& fields = gt.at("fields");
  for (const auto& id : planned) {
    if (!fields.contains(id)) {
      out.push_back({"field_set", id, "planned fragment missing from ground truth"});
    }
  }
  for (const auto& [id, value] : fields.items()) {
    const auto it = rendered.find(id);
    if (it == rendered.end()) {
      out.push_back({"field_set", id, "ground truth names a fragment that was not planned"});
      continue;
    }
    if (!value.is_string()) {
      out.push_back({"value", id, "ground-truth value is not a string"});
    } else if (value.get<std::string>() != it->second) {
      out.push_back({"value", id,
                     "ground truth '" + value.get<std::string>() + "' but rendered '" +
                         it->second + "'"});
    }
  }

  std::map<std::string, const ordered_json*> annotated;
  for (const auto& node : array_field(ann, "fragments", ann_path)) {
    annotated[string_field(node, "id", ann_path)] = &node;
  }
  std::set<std::string> layout_ids;
  for (const auto& frag : layout.fragments) {
    layout_ids.insert(frag.id);
    const auto it = annotated.find(frag.id);
    if (it == annotated.end()) {
      out.push_back({"bbox", frag.id, "fragment missing from annotations"});
      continue;
    }
    const auto& node = *it->second;
    BBox box;
    try {
      box = detail::bbox_from_json(node.at("bbox"));
    } catch (const std::exception&) {
      out.push_back({"bbox", frag.id, "annotation bbox is malformed"});
      continue;
    }
    if (!(box == frag.bbox)) {
      out.push_back({"bbox", frag.id, "annotation bbox differs from the layout"});
    }
    const auto text = string_field(node, "text", ann_path);
    const auto r = rendered.find(frag.id);
    const std::string& expected = r != rendered.end() ? r->second : frag.text;
    if (text != expected) {
      out.push_back({"annotation_text", frag.id,
                     "annotation text '" + text + "' but expected '" + expected + "'"});
    }
  }
  for (const auto& [id, node] : annotated) {
    if (!layout_ids.contains(id)) {
      out.push_back({"bbox", id, "annotation names a fragment the layout lacks"});
    }
  }

  try {
    const RasterImage image = read_png(dir / kImageFile);
    if (image.width() != layout.page_width || image.height() != layout.page_height) {
      out.push_back({"image", "",
                     "image is " + std::to_string(image.width()) + "x" +
                         std::to_string(image.height()) + ", layout page is " +
                         std::to_string(layout.page_width) + "x" +
                         std::to_string(layout.page_height)});
    }
  } catch (const ImageError& e) {
    out.push_back({"image", "", e.what()});
  }
  return out;
}

}  // namespace invsynth
