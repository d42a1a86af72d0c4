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

#include "invsynth/pipeline.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdio>
#include <initializer_list>
#include <thread>

#include "invsynth/error.hpp"
#include "json.hpp"
#include "utf8.hpp"

namespace invsynth {

namespace {

using json = nlohmann::json;
namespace fs = std::filesystem;

void check_keys(const json& obj, std::initializer_list<std::string_view> allowed,
                const std::string& where) {
  if (!obj.is_object()) throw ConfigError(where + " must be an object");
  for (const auto& [key, value] : obj.items()) {
    if (std::find(allowed.begin(), allowed.end(), key) == allowed.end()) {
      throw ConfigError("unknown key '" + key + "' in " + where);
    }
  }
}

std::string get_string(const json& obj, const char* key, const std::string& where) {
  const auto& v = obj.at(key);
  if (!v.is_string()) throw ConfigError(where + "." + key + " must be a string");
  return v.get<std::string>();
}

std::int64_t get_int(const json& obj, const char* key, const std::string& where) {
  const auto& v = obj.at(key);
  if (!v.is_number_integer()) throw ConfigError(where + "." + key + " must be an integer");
  return v.get<std::int64_t>();
}

double get_number(const json& obj, const char* key, const std::string& where) {
  const auto& v = obj.at(key);
  if (!v.is_number()) throw ConfigError(where + "." + key + " must be a number");
  return v.get<double>();
}

bool get_bool(const json& obj, const char* key, const std::string& where) {
  const auto& v = obj.at(key);
  if (!v.is_boolean()) throw ConfigError(where + "." + key + " must be a boolean");
  return v.get<bool>();
}

std::uint64_t get_u64(const json& obj, const char* key, const std::string& where) {
  const auto& v = obj.at(key);
  if (!v.is_number_unsigned()) {
    throw ConfigError(where + "." + key + " must be a non-negative integer");
  }
  return v.get<std::uint64_t>();
}

std::vector<std::string> get_strings(const json& obj, const char* key, const std::string& where) {
  const auto& v = obj.at(key);
  if (!v.is_array()) throw ConfigError(where + "." + key + " must be an array of strings");
  std::vector<std::string> out;
  for (const auto& item : v) {
    if (!item.is_string()) throw ConfigError(where + "." + key + " must be an array of strings");
    out.push_back(item.get<std::string>());
  }
  return out;
}

fs::path resolve(const fs::path& base, const std::string& p) {
  const fs::path path(p);
  return path.is_absolute() || base.empty() ? path : base / path;
}

SelectionRule parse_rule(const json& node, const std::string& where) {
  check_keys(node, {"kind", "action", "ids", "content_class", "pattern", "role"}, where);
  if (!node.contains("kind")) throw ConfigError(where + ".kind is required");
  const std::string kind = get_string(node, "kind", where);
  SelectionRule rule;
  if (node.contains("action")) {
    const std::string action = get_string(node, "action", where);
    if (action == "include") rule.action = RuleAction::kInclude;
    else if (action == "exclude") rule.action = RuleAction::kExclude;
    else throw ConfigError(where + ".action must be include or exclude");
  }
  if (node.contains("role")) rule.role = get_string(node, "role", where);

  const auto require = [&](const char* key) {
    if (!node.contains(key)) throw ConfigError(where + "." + key + " is required for " + kind);
  };
  if (kind == "by_id") {
    require("ids");
    rule.kind = RuleKind::kById;
    rule.ids = get_strings(node, "ids", where);
  } else if (kind == "by_class") {
    require("content_class");
    rule.kind = RuleKind::kByClass;
    const auto name = get_string(node, "content_class", where);
    const auto cls = content_class_from_string(name);
    if (!cls) throw ConfigError(where + ".content_class '" + name + "' is not a content class");
    rule.content_class = *cls;
  } else if (kind == "by_pattern") {
    require("pattern");
    rule.kind = RuleKind::kByPattern;
    rule.pattern = get_string(node, "pattern", where);
  } else {
    throw ConfigError(where + ".kind must be by_id, by_class or by_pattern");
  }
  try {
    validate_rule(rule);
  } catch (const RuleError& e) {
    throw ConfigError(where + ": " + e.what());
  }
  return rule;
}

WordLists parse_word_lists(const json& node) {
  const std::string where = "generator.word_lists";
  check_keys(node,
             {"company_stems", "company_suffixes", "street_names", "street_types", "cities",
              "first_names", "last_names", "item_words"},
             where);
  WordLists w;
  const auto take = [&](const char* key, std::vector<std::string>& dst) {
    if (node.contains(key)) dst = get_strings(node, key, where);
  };
  take("company_stems", w.company_stems);
  take("company_suffixes", w.company_suffixes);
  take("street_names", w.street_names);
  take("street_types", w.street_types);
  take("cities", w.cities);
  take("first_names", w.first_names);
  take("last_names", w.last_names);
  take("item_words", w.item_words);
  return w;
}

GeneratorConfig parse_generator(const json& node) {
  const std::string where = "generator";
  check_keys(node,
             {"mode", "endpoint", "model", "auth_env", "temperature", "max_retries",
              "timeout_seconds", "word_lists"},
             where);
  GeneratorConfig g;
  if (node.contains("mode")) {
    const auto mode = get_string(node, "mode", where);
    if (mode == "mock") g.mode = GeneratorMode::kMock;
    else if (mode == "remote") g.mode = GeneratorMode::kRemote;
    else throw ConfigError("generator.mode must be mock or remote");
  }
  if (node.contains("endpoint")) g.endpoint = get_string(node, "endpoint", where);
  if (node.contains("model")) g.model = get_string(node, "model", where);
  if (node.contains("auth_env")) g.auth_env = get_string(node, "auth_env", where);
  if (node.contains("temperature") && !node.at("temperature").is_null()) {
    g.temperature = get_number(node, "temperature", where);
  }
  if (node.contains("max_retries")) {
    const auto n = get_int(node, "max_retries", where);
    if (n < 0 || n > 10) throw ConfigError("generator.max_retries must be in [0, 10]");
    g.max_retries = static_cast<int>(n);
  }
  if (node.contains("timeout_seconds")) {
    g.timeout_seconds = get_number(node, "timeout_seconds", where);
    if (!(g.timeout_seconds > 0.0)) throw ConfigError("generator.timeout_seconds must be > 0");
  }
  if (node.contains("word_lists")) g.word_lists = parse_word_lists(node.at("word_lists"));
  return g;
}

double elapsed_ms(std::chrono::steady_clock::time_point since) {
  return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - since)
      .count();
}

std::string codepoint_label(char32_t cp) {
  char buf[16];
  std::snprintf(buf, sizeof buf, "U+%04X", static_cast<unsigned>(cp));
  return buf;
}

}  // namespace

PipelineConfig parse_config(std::string_view text, const fs::path& base_dir) {
  json root;
  try {
    root = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("config is not valid JSON: ") + e.what());
  }
  const std::string where = "config";
  check_keys(root,
             {"input_image", "input_layout", "output_dir", "variants", "base_seed", "same_seed",
              "rules", "generator", "inpaint", "font", "color_override", "dump_mask", "verify",
              "report_timings", "jobs"},
             where);
  for (const char* key : {"input_image", "input_layout", "output_dir"}) {
    if (!root.contains(key)) throw ConfigError(std::string("config.") + key + " is required");
  }

  PipelineConfig c;
  c.input_image = resolve(base_dir, get_string(root, "input_image", where));
  c.input_layout = resolve(base_dir, get_string(root, "input_layout", where));
  c.output_dir = resolve(base_dir, get_string(root, "output_dir", where));
  if (root.contains("variants")) {
    const auto n = get_int(root, "variants", where);
    if (n < 1 || n > 100000) throw ConfigError("config.variants must be in [1, 100000]");
    c.variants = static_cast<int>(n);
  }
  if (root.contains("base_seed")) c.base_seed = get_u64(root, "base_seed", where);
  if (root.contains("same_seed")) c.same_seed = get_bool(root, "same_seed", where);
  if (root.contains("rules")) {
    const auto& rules = root.at("rules");
    if (!rules.is_array()) throw ConfigError("config.rules must be an array");
    for (std::size_t i = 0; i < rules.size(); ++i) {
      c.rules.push_back(parse_rule(rules[i], "rules[" + std::to_string(i) + "]"));
    }
  }
  if (root.contains("generator")) c.generator = parse_generator(root.at("generator"));
  if (root.contains("inpaint")) {
    const auto& node = root.at("inpaint");
    check_keys(node, {"radius", "mask_pad"}, "inpaint");
    if (node.contains("radius")) {
      const auto r = get_int(node, "radius", "inpaint");
      if (r < 1 || r > 64) throw ConfigError("inpaint.radius must be in [1, 64]");
      c.inpaint.radius = static_cast<int>(r);
    }
    if (node.contains("mask_pad")) {
      const auto p = get_int(node, "mask_pad", "inpaint");
      if (p < 0 || p > 64) throw ConfigError("inpaint.mask_pad must be in [0, 64]");
      c.inpaint.mask_pad = static_cast<int>(p);
    }
  }
  if (!root.contains("font")) throw ConfigError("config.font is required");
  {
    const auto& node = root.at("font");
    check_keys(node, {"font_file", "min_size", "size_step"}, "font");
    if (!node.contains("font_file")) throw ConfigError("font.font_file is required");
    c.font.font_file = resolve(base_dir, get_string(node, "font_file", "font"));
    if (node.contains("min_size")) {
      const auto v = get_int(node, "min_size", "font");
      if (v < 1 || v > 1000) throw ConfigError("font.min_size must be in [1, 1000]");
      c.font.min_size = static_cast<int>(v);
    }
    if (node.contains("size_step")) {
      const auto v = get_int(node, "size_step", "font");
      if (v < 1 || v > 1000) throw ConfigError("font.size_step must be in [1, 1000]");
      c.font.size_step = static_cast<int>(v);
    }
  }
  if (root.contains("color_override") && !root.at("color_override").is_null()) {
    const auto& v = root.at("color_override");
    if (!v.is_array() || v.size() != 3) {
      throw ConfigError("color_override must be [r, g, b] or null");
    }
    std::uint8_t rgb[3];
    for (std::size_t i = 0; i < 3; ++i) {
      if (!v[i].is_number_integer() || v[i].get<int>() < 0 || v[i].get<int>() > 255) {
        throw ConfigError("color_override components must be integers in [0, 255]");
      }
      rgb[i] = static_cast<std::uint8_t>(v[i].get<int>());
    }
    c.color_override = Rgb{rgb[0], rgb[1], rgb[2]};
  }
  if (root.contains("dump_mask")) c.dump_mask = get_bool(root, "dump_mask", where);
  if (root.contains("verify")) c.verify = get_bool(root, "verify", where);
  if (root.contains("report_timings")) c.report_timings = get_bool(root, "report_timings", where);
  if (root.contains("jobs")) {
    const auto j = get_int(root, "jobs", where);
    if (j < 1 || j > 256) throw ConfigError("config.jobs must be in [1, 256]");
    c.jobs = static_cast<int>(j);
  }
  try {
    validate_generator_config(c.generator);
  } catch (const GenerationError& e) {
    throw ConfigError(e.what());
  }
  return c;
}

PipelineConfig load_config(const fs::path& path) {
  std::string text;
  try {
    text = detail::read_file(path);
  } catch (const Error& e) {
    throw ConfigError(e.what());
  }
  return parse_config(text, path.parent_path());
}

SourceBundle load_sources(const PipelineConfig& config) {
  LayoutDocument layout = read_layout_file(config.input_layout);
  RasterImage image = read_png(config.input_image);
  if (image.width() != layout.page_width || image.height() != layout.page_height) {
    throw ConfigError("layout page is " + std::to_string(layout.page_width) + "x" +
                      std::to_string(layout.page_height) + " but " +
                      config.input_image.string() + " is " + std::to_string(image.width()) +
                      "x" + std::to_string(image.height()));
  }
  Font font = Font::load(config.font);
  return SourceBundle{std::move(layout), std::move(image), std::move(font)};
}

Synthesis synthesize(const PipelineConfig& config, const SourceBundle& source,
                     std::uint64_t seed) {
  using Clock = std::chrono::steady_clock;
  Synthesis s;
  const auto& layout = source.layout;

  auto t = Clock::now();
  try {
    s.plan = select_targets(layout, config.rules);
    s.layout = mark_targets(layout, s.plan);
  } catch (const Error& e) {
    throw PipelineError("plan", e.what());
  }
  s.timings_ms["plan"] = elapsed_ms(t);

  if (s.plan.empty()) {
    s.mask = Mask(source.image.width(), source.image.height());
    s.inpainted = source.image;
    s.image = source.image;
    return s;
  }

  t = Clock::now();
  try {
    GeneratorConfig generator = config.generator;
    generator.seed = seed;
    s.replacements = generate(s.plan, generator);
  } catch (const Error& e) {
    throw PipelineError("generate", e.what());
  }
  s.timings_ms["generate"] = elapsed_ms(t);

  // Ink colour comes from the original pixels; after inpainting only
  // background is left to sample.
  t = Clock::now();
  std::vector<BBox> boxes;
  std::vector<Rgb> colors;
  for (const auto& entry : s.plan.entries) {
    const auto* fragment = layout.find(entry.fragment_id);
    if (fragment == nullptr) throw PipelineError("plan", "planned fragment missing", entry.fragment_id);
    boxes.push_back(fragment->bbox);
    colors.push_back(config.color_override ? *config.color_override
                                           : estimate_text_color(source.image, fragment->bbox));
  }
  s.timings_ms["color"] = elapsed_ms(t);

  t = Clock::now();
  try {
    s.mask = build_mask(source.image.width(), source.image.height(), boxes,
                        config.inpaint.mask_pad);
    s.inpainted = inpaint(source.image, s.mask, config.inpaint);
  } catch (const Error& e) {
    throw PipelineError("inpaint", e.what());
  }
  s.timings_ms["inpaint"] = elapsed_ms(t);

  t = Clock::now();
  s.image = s.inpainted;
  const Font& font = source.font;
  for (std::size_t i = 0; i < s.plan.entries.size(); ++i) {
    const auto& entry = s.plan.entries[i];
    const BBox& box = boxes[i];
    const auto it = s.replacements.find(entry.fragment_id);
    if (it == s.replacements.end()) {
      throw PipelineError("render", "no replacement text", entry.fragment_id);
    }
    FragmentOutcome outcome;
    outcome.fragment_id = entry.fragment_id;
    outcome.original_text = entry.original_text;
    outcome.rendered_text = it->second;
    outcome.content_class = entry.content_class;
    outcome.role = entry.role;
    int size = 0;
    try {
      size = fit_font_size(it->second, box, font);
    } catch (const FitError& e) {
      size = e.min_size();
      outcome.fit_warning = true;
      s.warnings.push_back({"fit", entry.fragment_id, e.what()});
    }
    try {
      const auto rendered = render_fragment(s.image, box, it->second, font, size, colors[i]);
      outcome.font_size = rendered.size;
      outcome.origin_x = rendered.origin_x;
      outcome.baseline_y = rendered.baseline_y;
      outcome.ink_bbox = rendered.ink_bbox;
      outcome.color = rendered.color;
      if (!rendered.missing.empty()) {
        std::string list;
        for (const char32_t cp : rendered.missing) {
          if (!list.empty()) list += ", ";
          list += codepoint_label(cp);
        }
        s.warnings.push_back({"missing_glyph", entry.fragment_id,
                              "font has no glyph for " + list + "; drew the replacement glyph"});
      }
    } catch (const Error& e) {
      throw PipelineError("render", e.what(), entry.fragment_id);
    }
    s.fragments.push_back(std::move(outcome));
  }
  s.timings_ms["render"] = elapsed_ms(t);
  return s;
}

std::string variant_dir_name(int index) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "variant_%03d", index);
  return buf;
}

GenerationArtifact run_single(const PipelineConfig& config, const SourceBundle& source,
                              std::uint64_t seed, const fs::path& dir, int variant) {
  const auto started = std::chrono::steady_clock::now();
  Synthesis s = synthesize(config, source, seed);

  fs::path staging = dir;
  staging.replace_filename("." + dir.filename().string() + ".partial");
  std::error_code ec;
  try {
    fs::remove_all(staging);
    fs::create_directories(staging);
    write_png(staging / kImageFile, s.image);
    if (config.dump_mask) write_mask_png(staging / kMaskFile, s.mask);
    s.timings_ms["total"] = elapsed_ms(started);
    detail::write_file(staging / kGroundTruthFile, ground_truth_json(s));
    detail::write_file(staging / kAnnotationsFile, annotations_json(s));
    detail::write_file(staging / kReportFile, report_json(s, seed, variant, config));
    fs::remove_all(dir);
    fs::rename(staging, dir);
  } catch (const std::exception& e) {
    fs::remove_all(staging, ec);
    throw PipelineError("write", e.what());
  }

  if (config.verify) {
    std::vector<ArtifactViolation> violations;
    try {
      violations = verify_artifact(dir, source.layout);
    } catch (const std::exception& e) {
      fs::remove_all(dir, ec);
      throw PipelineError("verify", e.what());
    }
    if (!violations.empty()) {
      fs::remove_all(dir, ec);
      throw PipelineError("verify",
                          std::to_string(violations.size()) + " violation(s), first: " +
                              violations.front().check + ": " + violations.front().message,
                          violations.front().fragment_id);
    }
  }

  GenerationArtifact a;
  a.dir = dir;
  a.image_path = dir / kImageFile;
  a.ground_truth_path = dir / kGroundTruthFile;
  a.annotations_path = dir / kAnnotationsFile;
  a.report_path = dir / kReportFile;
  a.seed = seed;
  a.ground_truth = std::move(s.replacements);
  a.warnings = std::move(s.warnings);
  return a;
}

bool BatchResult::ok() const noexcept {
  return errors.empty() &&
         std::all_of(variants.begin(), variants.end(), [](const auto& v) { return v.ok(); });
}

BatchResult run_batch(const PipelineConfig& config) {
  if (config.variants < 1) throw ConfigError("variants must be >= 1");
  const SourceBundle source = load_sources(config);
  std::error_code ec;
  fs::create_directories(config.output_dir, ec);
  if (ec || !fs::is_directory(config.output_dir)) {
    throw ConfigError("cannot create output directory " + config.output_dir.string());
  }

  BatchResult result;
  result.variants.resize(static_cast<std::size_t>(config.variants));
  std::atomic<int> next{0};
  const auto worker = [&] {
    for (int i = next++; i < config.variants; i = next++) {
      auto& outcome = result.variants[static_cast<std::size_t>(i)];
      outcome.index = i;
      outcome.seed = config.same_seed ? config.base_seed
                                      : config.base_seed + static_cast<std::uint64_t>(i);
      try {
        outcome.artifact = run_single(config, source, outcome.seed,
                                      config.output_dir / variant_dir_name(i), i);
      } catch (const std::exception& e) {
        outcome.error = e.what();
      }
    }
  };
  const int jobs = std::clamp(config.jobs, 1, config.variants);
  if (jobs == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (int j = 0; j < jobs; ++j) pool.emplace_back(worker);
    for (auto& thread : pool) thread.join();
  }

  // Distinct seeds must give distinct content in mock mode.
  if (config.generator.mode == GeneratorMode::kMock && !config.same_seed) {
    for (std::size_t a = 0; a < result.variants.size(); ++a) {
      const auto& va = result.variants[a];
      if (!va.ok() || va.artifact->ground_truth.empty()) continue;
      for (std::size_t b = a + 1; b < result.variants.size(); ++b) {
        const auto& vb = result.variants[b];
        if (vb.ok() && va.artifact->ground_truth == vb.artifact->ground_truth) {
          result.errors.push_back(variant_dir_name(va.index) + " and " +
                                  variant_dir_name(vb.index) + " have identical ground truth");
        }
      }
    }
  }
  return result;
}

}  // namespace invsynth
