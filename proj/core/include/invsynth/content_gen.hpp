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

// Replacement text generation: prompt construction and strict response
// parsing for a remote completion endpoint, plus a seeded offline generator.

#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "invsynth/planner.hpp"

namespace invsynth {

/// fragment ID -> synthetic text.
using ReplacementMap = std::map<std::string, std::string>;

/// Vocabulary for the offline generator. Empty lists fall back to the
/// built-in defaults.
struct WordLists {
  std::vector<std::string> company_stems;
  std::vector<std::string> company_suffixes;
  std::vector<std::string> street_names;
  std::vector<std::string> street_types;
  std::vector<std::string> cities;
  std::vector<std::string> first_names;
  std::vector<std::string> last_names;
  std::vector<std::string> item_words;

  /// The lists compiled into the library.
  static const WordLists& builtin();
  /// `overrides` with every empty list replaced by the built-in one.
  static WordLists merged(const WordLists& overrides);
};

enum class GeneratorMode { kRemote, kMock };

struct GeneratorConfig {
  GeneratorMode mode = GeneratorMode::kMock;
  // remote
  std::string endpoint;      // e.g. https://host/v1/chat/completions
  std::string model;
  std::string auth_env;      // name of the variable holding the bearer token
  std::optional<double> temperature;
  int max_retries = 2;
  double timeout_seconds = 60.0;
  // mock
  std::uint64_t seed = 0;
  WordLists word_lists;
};

/// Throws GenerationError(kConfig) when the mode's required fields are
/// missing.
void validate_generator_config(const GeneratorConfig& config);

/// Deterministic prompt; one `<id>: <original_text>` line per entry in plan
/// order. Throws GenerationError(kConfig) on an empty plan.
std::string build_prompt(const ReplacementPlan& plan);

/// Prompt for a retry: the original prompt followed by the problems found in
/// the previous answer.
std::string build_retry_prompt(const ReplacementPlan& plan,
                               const std::vector<std::string>& violations);

/// Strips an optional markdown code fence, parses exactly one JSON object
/// and checks that its keys equal the plan IDs and its values are non-empty
/// single-line strings. Throws ResponseError naming the problem.
ReplacementMap parse_response(std::string_view raw, const ReplacementPlan& plan);

struct ReplacementViolation {
  std::string fragment_id;
  ContentClass expected = ContentClass::kFreeText;
  ContentClass actual = ContentClass::kFreeText;
  std::string value;

  std::string message() const;
};

/// One violation per entry whose text classifies differently from the plan.
std::vector<ReplacementViolation> validate_replacements(
    const ReplacementMap& map, const ReplacementPlan& plan);

/// Seeded offline generator; a pure function of (plan, seed, word lists).
ReplacementMap mock_generate(const ReplacementPlan& plan, std::uint64_t seed,
                             const WordLists& words = {});

/// Sends one prompt to the completion endpoint and returns the reply text.
/// Throws GenerationError(kTransport | kAuth).
std::string http_completion(const GeneratorConfig& config,
                            const std::string& prompt);

/// Remote: prompt, call, parse and validate, retrying with feedback up to
/// max_retries times. Mock: mock_generate with config.seed. The result is
/// always fully validated. Empty plans yield an empty map without a call.
ReplacementMap generate(const ReplacementPlan& plan,
                        const GeneratorConfig& config);

/// Single-object canonical JSON text of a map (sorted keys).
std::string serialize_replacement_map(const ReplacementMap& map);

}  // namespace invsynth
