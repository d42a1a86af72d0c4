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

// End-to-end variant synthesis: plan, generate, erase, render, and write the
// paired image / ground-truth / annotation / report files.

#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "invsynth/content_gen.hpp"
#include "invsynth/image.hpp"
#include "invsynth/inpaint.hpp"
#include "invsynth/layout.hpp"
#include "invsynth/planner.hpp"
#include "invsynth/text_render.hpp"

namespace invsynth {

struct PipelineConfig {
  std::filesystem::path input_image;
  std::filesystem::path input_layout;
  std::filesystem::path output_dir;
  int variants = 1;
  std::uint64_t base_seed = 0;
  /// Every variant uses base_seed instead of base_seed + index.
  bool same_seed = false;
  std::vector<SelectionRule> rules;
  GeneratorConfig generator;
  InpaintParams inpaint;
  FontSpec font;
  std::optional<Rgb> color_override;
  bool dump_mask = false;
  bool verify = false;
  /// Adds wall-clock stage timings to report.json. Off by default because
  /// timings make reports differ between otherwise identical runs.
  bool report_timings = false;
  int jobs = 1;
};

/// Parses config JSON. Relative paths resolve against `base_dir`. Throws
/// ConfigError.
PipelineConfig parse_config(std::string_view text,
                            const std::filesystem::path& base_dir);
/// Reads and parses a config file; relative paths resolve against its
/// directory.
PipelineConfig load_config(const std::filesystem::path& path);

struct RunWarning {
  std::string kind;  // "fit" or "missing_glyph"
  std::string fragment_id;
  std::string message;

  bool operator==(const RunWarning&) const = default;
};

struct FragmentOutcome {
  std::string fragment_id;
  std::string original_text;
  std::string rendered_text;
  ContentClass content_class = ContentClass::kFreeText;
  std::string role;
  int font_size = 0;
  double origin_x = 0.0;
  double baseline_y = 0.0;
  std::optional<BBox> ink_bbox;
  Rgb color;
  bool fit_warning = false;
};

/// Everything one variant produces, before anything touches the disk.
struct Synthesis {
  LayoutDocument layout;  // replace flags set to the plan
  ReplacementPlan plan;
  ReplacementMap replacements;
  Mask mask;
  RasterImage inpainted;
  RasterImage image;
  std::vector<FragmentOutcome> fragments;  // plan order
  std::vector<RunWarning> warnings;
  std::map<std::string, double> timings_ms;

  bool no_op() const noexcept { return plan.empty(); }
};

/// Read-only inputs shared by every variant of a batch.
struct SourceBundle {
  LayoutDocument layout;
  RasterImage image;
  Font font;
};

/// Loads layout, image and font and checks that the layout page matches the
/// image size. Throws ConfigError, LayoutError, ImageError or FontError.
SourceBundle load_sources(const PipelineConfig& config);

/// Runs every stage in memory for one seed. Throws PipelineError naming the
/// failed stage.
Synthesis synthesize(const PipelineConfig& config, const SourceBundle& source,
                     std::uint64_t seed);

struct GenerationArtifact {
  std::filesystem::path dir;
  std::filesystem::path image_path;
  std::filesystem::path ground_truth_path;
  std::filesystem::path annotations_path;
  std::filesystem::path report_path;
  std::uint64_t seed = 0;
  ReplacementMap ground_truth;
  std::vector<RunWarning> warnings;
};

inline constexpr const char* kImageFile = "synthetic.png";
inline constexpr const char* kGroundTruthFile = "ground_truth.json";
inline constexpr const char* kAnnotationsFile = "annotations.json";
inline constexpr const char* kReportFile = "report.json";
inline constexpr const char* kMaskFile = "mask.png";

/// "variant_007" for index 7.
std::string variant_dir_name(int index);

/// Canonical JSON texts of the three metadata files.
std::string ground_truth_json(const Synthesis& s);
std::string annotations_json(const Synthesis& s);
std::string report_json(const Synthesis& s, std::uint64_t seed, int variant,
                        const PipelineConfig& config);

/// Synthesises and writes one variant into `dir`, replacing anything there.
/// Output is staged in a sibling directory and renamed into place, so a
/// failed run leaves nothing behind. Throws PipelineError.
GenerationArtifact run_single(const PipelineConfig& config,
                              const SourceBundle& source, std::uint64_t seed,
                              const std::filesystem::path& dir, int variant = 0);

struct VariantOutcome {
  int index = 0;
  std::uint64_t seed = 0;
  std::optional<GenerationArtifact> artifact;
  std::string error;  // empty on success

  bool ok() const noexcept { return artifact.has_value(); }
};

struct BatchResult {
  std::vector<VariantOutcome> variants;  // index order
  /// Batch-level problems, such as two mock variants with equal ground truth.
  std::vector<std::string> errors;

  bool ok() const noexcept;
};

/// Runs variants 0..variants-1 into output_dir/variant_NNN with seeds
/// base_seed + index, up to `jobs` at a time. Failed variants are recorded
/// and skipped. Throws only for errors that affect every variant (sources,
/// output directory).
BatchResult run_batch(const PipelineConfig& config);

struct ArtifactViolation {
  std::string check;  // field_set, bbox, value, annotation_text, image
  std::string fragment_id;
  std::string message;
};

/// Cross-checks one variant directory against the source layout. Throws
/// Error if a file is missing or unreadable.
std::vector<ArtifactViolation> verify_artifact(const std::filesystem::path& dir,
                                               const LayoutDocument& layout);

}  // namespace invsynth
