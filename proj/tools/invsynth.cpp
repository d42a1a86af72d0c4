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

// invsynth: synthesise invoice variants from one seed document.
//
// Exit status: 0 success, 1 a variant (or verification) failed, 2 bad
// configuration or unreadable input.

#include <cstdint>
#include <cstdio>
#include <exception>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "invsynth/error.hpp"
#include "invsynth/pipeline.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitFailed = 1;
constexpr int kExitConfig = 2;

struct GenerateArgs {
  std::string config;
  std::optional<int> variants;
  std::optional<std::uint64_t> seed;
  std::optional<int> jobs;
  std::string output_dir;
  bool mock = false;
  bool dump_mask = false;
  bool verify = false;
  bool same_seed = false;
  bool timings = false;
};

struct VerifyArgs {
  std::string artifact_dir;
  std::string layout;
};

int run_generate(const GenerateArgs& args) {
  invsynth::PipelineConfig config;
  try {
    config = invsynth::load_config(args.config);
  } catch (const invsynth::Error& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitConfig;
  }
  if (args.variants) config.variants = *args.variants;
  if (args.seed) config.base_seed = *args.seed;
  if (args.jobs) config.jobs = *args.jobs;
  if (!args.output_dir.empty()) config.output_dir = args.output_dir;
  if (args.mock) config.generator.mode = invsynth::GeneratorMode::kMock;
  config.dump_mask = config.dump_mask || args.dump_mask;
  config.verify = config.verify || args.verify;
  config.same_seed = config.same_seed || args.same_seed;
  config.report_timings = config.report_timings || args.timings;

  invsynth::BatchResult result;
  try {
    result = invsynth::run_batch(config);
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitConfig;
  }

  for (const auto& v : result.variants) {
    const std::string name = invsynth::variant_dir_name(v.index);
    if (v.ok()) {
      std::printf("%s ok seed=%llu warnings=%zu\n", name.c_str(),
                  static_cast<unsigned long long>(v.seed), v.artifact->warnings.size());
      for (const auto& w : v.artifact->warnings) {
        std::fprintf(stderr, "warning: %s %s [%s]: %s\n", name.c_str(), w.kind.c_str(),
                     w.fragment_id.c_str(), w.message.c_str());
      }
    } else {
      std::printf("%s FAILED seed=%llu: %s\n", name.c_str(),
                  static_cast<unsigned long long>(v.seed), v.error.c_str());
    }
  }
  for (const auto& e : result.errors) std::printf("batch FAILED: %s\n", e.c_str());
  return result.ok() ? kExitOk : kExitFailed;
}

int run_verify(const VerifyArgs& args) {
  std::vector<invsynth::ArtifactViolation> violations;
  try {
    const auto layout = invsynth::read_layout_file(args.layout);
    violations = invsynth::verify_artifact(args.artifact_dir, layout);
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitConfig;
  }
  for (const auto& v : violations) {
    std::printf("%s %s: %s\n", v.check.c_str(),
                v.fragment_id.empty() ? "-" : v.fragment_id.c_str(), v.message.c_str());
  }
  std::printf("%zu violation(s)\n", violations.size());
  return violations.empty() ? kExitOk : kExitFailed;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Synthesise paired invoice images and ground truth from one seed document"};
  app.require_subcommand(1);

  GenerateArgs gen;
  auto* generate = app.add_subcommand("generate", "Write variant_NNN artifact directories");
  generate->add_option("--config", gen.config, "Pipeline config JSON")->required();
  generate->add_option("--variants", gen.variants, "Number of variants")
      ->check(CLI::PositiveNumber);
  generate->add_option("--seed", gen.seed, "Base seed (variant i uses seed + i)");
  generate->add_option("--jobs", gen.jobs, "Variants to run concurrently")
      ->check(CLI::PositiveNumber);
  generate->add_option("--output-dir", gen.output_dir, "Override the config output_dir");
  generate->add_flag("--mock", gen.mock, "Use the offline mock generator");
  generate->add_flag("--dump-mask", gen.dump_mask, "Also write mask.png per variant");
  generate->add_flag("--verify", gen.verify, "Check each artifact after writing it");
  generate->add_flag("--same-seed", gen.same_seed, "Give every variant the base seed");
  generate->add_flag("--timings", gen.timings, "Record stage timings in report.json");

  VerifyArgs ver;
  auto* verify = app.add_subcommand("verify", "Check one artifact directory against a layout");
  verify->add_option("--artifact-dir", ver.artifact_dir, "variant_NNN directory")->required();
  verify->add_option("--layout", ver.layout, "Source layout JSON")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitConfig;
  }
  if (generate->parsed()) return run_generate(gen);
  return run_verify(ver);
}
