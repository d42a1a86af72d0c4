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

#include "invsynth/content_gen.hpp"

#include <set>

#include "invsynth/error.hpp"
#include "json_util.hpp"
#include "utf8.hpp"

namespace invsynth {

namespace {

using detail::ordered_json;

constexpr std::string_view kInstructions =
    "You are helping to anonymise an invoice. Invent a realistic but "
    "fictional replacement for each item listed below.\n"
    "Keep the kind of content the same: replace a date with a date, a "
    "currency amount with a currency amount, an identifier with an "
    "identifier of the same shape, an email address with an email address, "
    "a phone number with a phone number, and free text with free text of "
    "similar length. Keep each replacement on a single line.\n"
    "Return only a single JSON object keyed by fragment ID, mapping every ID "
    "below to its new text. Do not add explanations or any other text.\n"
    "\n"
    "Items:\n";

[[noreturn]] void fail(ResponseErrorKind kind, std::string message,
                       std::string id = {}) {
  throw ResponseError(kind, std::move(message), std::move(id));
}

std::string_view strip_fence(std::string_view s) {
  s = detail::trim(s);
  if (s.substr(0, 3) != "```") return s;
  const auto eol = s.find('\n');
  if (eol == std::string_view::npos) {
    fail(ResponseErrorKind::kUnparseable, "unterminated code fence");
  }
  s = detail::trim(s.substr(eol + 1));
  if (s.size() >= 3 && s.substr(s.size() - 3) == "```") {
    s = detail::trim(s.substr(0, s.size() - 3));
  }
  return s;
}

/// Length of the balanced {...} value at the start of `s`, or npos.
std::size_t object_extent(std::string_view s) {
  int depth = 0;
  bool in_string = false;
  bool escaped = false;
  for (std::size_t i = 0; i < s.size(); ++i) {
    const char c = s[i];
    if (in_string) {
      if (escaped) {
        escaped = false;
      } else if (c == '\\') {
        escaped = true;
      } else if (c == '"') {
        in_string = false;
      }
      continue;
    }
    if (c == '"') {
      in_string = true;
    } else if (c == '{' || c == '[') {
      ++depth;
    } else if (c == '}' || c == ']') {
      if (--depth == 0) return i + 1;
    }
  }
  return std::string_view::npos;
}

}  // namespace

const char* to_string(ResponseErrorKind kind) noexcept {
  switch (kind) {
    case ResponseErrorKind::kUnparseable: return "unparseable";
    case ResponseErrorKind::kMultipleObjects: return "multiple_objects";
    case ResponseErrorKind::kMissingId: return "missing_id";
    case ResponseErrorKind::kExtraneousId: return "extraneous_id";
    case ResponseErrorKind::kInvalidValue: return "invalid_value";
  }
  return "unknown";
}

const char* to_string(GenerationErrorKind kind) noexcept {
  switch (kind) {
    case GenerationErrorKind::kConfig: return "config";
    case GenerationErrorKind::kRetriesExhausted: return "retries_exhausted";
    case GenerationErrorKind::kTransport: return "transport";
    case GenerationErrorKind::kAuth: return "auth";
  }
  return "unknown";
}

void validate_generator_config(const GeneratorConfig& config) {
  if (config.max_retries < 0) {
    throw GenerationError(GenerationErrorKind::kConfig,
                          "max_retries must be non-negative");
  }
  if (config.mode == GeneratorMode::kRemote) {
    if (config.endpoint.empty()) {
      throw GenerationError(GenerationErrorKind::kConfig,
                            "remote mode requires an endpoint");
    }
    if (config.auth_env.empty()) {
      throw GenerationError(GenerationErrorKind::kConfig,
                            "remote mode requires auth_env");
    }
    if (!(config.timeout_seconds > 0.0)) {
      throw GenerationError(GenerationErrorKind::kConfig,
                            "timeout must be positive");
    }
  }
}

std::string build_prompt(const ReplacementPlan& plan) {
  if (plan.empty()) {
    throw GenerationError(GenerationErrorKind::kConfig,
                          "cannot build a prompt for an empty plan");
  }
  std::string prompt(kInstructions);
  for (const auto& e : plan.entries) {
    prompt += e.fragment_id;
    prompt += ": ";
    prompt += e.original_text;
    prompt += '\n';
  }
  return prompt;
}

std::string build_retry_prompt(const ReplacementPlan& plan,
                               const std::vector<std::string>& violations) {
  std::string prompt = build_prompt(plan);
  prompt += "\nYour previous answer could not be used:\n";
  for (const auto& v : violations) {
    prompt += "- ";
    prompt += v;
    prompt += '\n';
  }
  prompt += "Answer again with the corrected single JSON object only.\n";
  return prompt;
}

ReplacementMap parse_response(std::string_view raw,
                              const ReplacementPlan& plan) {
  const auto body = strip_fence(raw);
  if (body.empty()) fail(ResponseErrorKind::kUnparseable, "empty response");
  if (body.front() != '{') {
    fail(ResponseErrorKind::kUnparseable, "response is not a JSON object");
  }
  const auto extent = object_extent(body);
  if (extent == std::string_view::npos) {
    fail(ResponseErrorKind::kUnparseable, "unbalanced JSON object");
  }
  const auto rest = detail::trim(body.substr(extent));
  if (!rest.empty()) {
    if (rest.front() == '{') {
      fail(ResponseErrorKind::kMultipleObjects,
           "response contains more than one top-level JSON object");
    }
    fail(ResponseErrorKind::kUnparseable, "trailing text after JSON object");
  }

  ordered_json root;
  try {
    root = ordered_json::parse(body.substr(0, extent));
  } catch (const ordered_json::parse_error& e) {
    fail(ResponseErrorKind::kUnparseable,
         std::string("invalid JSON: ") + e.what());
  }

  std::set<std::string_view> wanted;
  for (const auto& e : plan.entries) wanted.insert(e.fragment_id);

  for (const auto& e : plan.entries) {
    if (!root.contains(e.fragment_id)) {
      fail(ResponseErrorKind::kMissingId,
           "response is missing " + e.fragment_id, e.fragment_id);
    }
  }

  ReplacementMap map;
  for (const auto& item : root.items()) {
    const std::string& id = item.key();
    if (!wanted.count(id)) {
      fail(ResponseErrorKind::kExtraneousId,
           "response contains unrequested id " + id, id);
    }
    if (!item.value().is_string()) {
      fail(ResponseErrorKind::kInvalidValue, "value for " + id + " is not a string",
           id);
    }
    const auto value = item.value().get<std::string>();
    if (detail::has_line_break(value)) {
      fail(ResponseErrorKind::kInvalidValue,
           "value for " + id + " contains a line break", id);
    }
    const auto trimmed = detail::trim(value);
    if (trimmed.empty()) {
      fail(ResponseErrorKind::kInvalidValue, "value for " + id + " is empty", id);
    }
    map.emplace(id, std::string(trimmed));
  }
  return map;
}

std::string ReplacementViolation::message() const {
  return fragment_id + ": expected " + std::string(to_string(expected)) +
         " but \"" + value + "\" reads as " + std::string(to_string(actual));
}

std::vector<ReplacementViolation> validate_replacements(
    const ReplacementMap& map, const ReplacementPlan& plan) {
  std::vector<ReplacementViolation> out;
  for (const auto& e : plan.entries) {
    const auto it = map.find(e.fragment_id);
    if (it == map.end()) continue;  // key sets are checked by parse_response
    const auto actual = classify_fragment(it->second);
    if (actual != e.content_class) {
      out.push_back({e.fragment_id, e.content_class, actual, it->second});
    }
  }
  return out;
}

ReplacementMap generate(const ReplacementPlan& plan,
                        const GeneratorConfig& config) {
  validate_generator_config(config);
  if (config.mode == GeneratorMode::kMock) {
    return mock_generate(plan, config.seed, config.word_lists);
  }
  if (plan.empty()) return {};

  std::vector<std::string> problems;
  for (int attempt = 0; attempt <= config.max_retries; ++attempt) {
    const auto prompt =
        attempt == 0 ? build_prompt(plan) : build_retry_prompt(plan, problems);
    const auto reply = http_completion(config, prompt);
    problems.clear();
    try {
      auto map = parse_response(reply, plan);
      const auto violations = validate_replacements(map, plan);
      if (violations.empty()) return map;
      for (const auto& v : violations) problems.push_back(v.message());
    } catch (const ResponseError& e) {
      problems.push_back(std::string(to_string(e.kind())) + ": " + e.what());
    }
  }
  throw GenerationError(GenerationErrorKind::kRetriesExhausted,
                        "no valid response after " +
                            std::to_string(config.max_retries + 1) + " attempts",
                        problems);
}

std::string serialize_replacement_map(const ReplacementMap& map) {
  ordered_json root = ordered_json::object();
  for (const auto& [id, text] : map) root[id] = text;
  return detail::dump_canonical(root);
}

}  // namespace invsynth
