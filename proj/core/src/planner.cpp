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

#include "invsynth/planner.hpp"

#include <algorithm>
#include <optional>
#include <regex>
#include <set>

#include "invsynth/error.hpp"
#include "utf8.hpp"

namespace invsynth {

namespace {

// Every pattern treats digits as a class, never as specific values.
constexpr const char* kMonth =
    "(?:January|February|March|April|May|June|July|August|September|October|"
    "November|December|Jan|Feb|Mar|Apr|Jun|Jul|Aug|Sept|Sep|Oct|Nov|Dec)\\.?";
constexpr const char* kAmount = "(?:\\d{1,3}(?:,\\d{3})+|\\d+)";
constexpr const char* kSigil = "(?:\\$|€|£|USD|EUR|GBP)";

struct Classifier {
  std::vector<std::regex> date;
  std::vector<std::regex> currency;
  std::regex email;
  std::regex phone;
  std::regex numeric_id;

  Classifier() {
    const auto ecma = std::regex::ECMAScript | std::regex::optimize;
    const auto icase = ecma | std::regex::icase;
    const std::string month = kMonth;
    const std::string amount = kAmount;
    const std::string sigil = kSigil;
    date = {
        std::regex("\\d{1,2}([/.\\-])\\d{1,2}\\1(?:\\d{4}|\\d{2})", ecma),
        std::regex("\\d{4}([/.\\-])\\d{1,2}\\1\\d{1,2}", ecma),
        std::regex("\\d{1,2}(?:st|nd|rd|th)?[ \\-]" + month + "[ \\-],? ?\\d{4}",
                   icase),
        std::regex(month + " \\d{1,2}(?:st|nd|rd|th)?,? \\d{4}", icase),
    };
    currency = {
        std::regex("-?" + sigil + " ?-?" + amount + "(?:\\.\\d{2})?", ecma),
        std::regex("-?" + amount + "(?:\\.\\d{2})? ?" + sigil, ecma),
        std::regex("-?" + amount + "\\.\\d{2}", ecma),
        std::regex("-?\\d{1,3}(?:,\\d{3})+", ecma),
    };
    email = std::regex(
        "[A-Za-z0-9._%+\\-]+@[A-Za-z0-9\\-]+(?:\\.[A-Za-z0-9\\-]+)*\\.[A-Za-z]{2,}",
        ecma);
    phone = std::regex(
        "(?:\\+\\d{1,3}[ .\\-]?)?(?:\\(\\d{2,4}\\)[ .\\-]?|\\d{2,4}[ .\\-])"
        "\\d{3,4}[ .\\-]?\\d{3,4}",
        ecma);
    numeric_id = std::regex(
        "(?:[A-Za-z]{1,6} ?[\\-#/:]? ?)?#?\\d+(?:[\\-/.]\\d+)*", ecma);
  }
};

const Classifier& classifier() {
  static const Classifier instance;
  return instance;
}

bool any_match(const std::vector<std::regex>& patterns, const std::string& s) {
  return std::any_of(patterns.begin(), patterns.end(), [&](const std::regex& r) {
    return std::regex_match(s, r);
  });
}

std::regex compile_pattern(const std::string& pattern) {
  try {
    return std::regex(pattern, std::regex::ECMAScript);
  } catch (const std::regex_error& e) {
    throw RuleError("invalid pattern '" + pattern + "': " + e.what());
  }
}

}  // namespace

ContentClass classify_fragment(std::string_view text) {
  const std::string s(detail::trim(text));
  if (s.empty()) return ContentClass::kFreeText;
  const auto& c = classifier();
  if (any_match(c.date, s)) return ContentClass::kDate;
  if (any_match(c.currency, s)) return ContentClass::kCurrencyAmount;
  if (std::regex_match(s, c.email)) return ContentClass::kEmail;
  if (std::regex_match(s, c.phone)) return ContentClass::kPhone;
  if (std::regex_match(s, c.numeric_id)) return ContentClass::kNumericId;
  return ContentClass::kFreeText;
}

SelectionRule SelectionRule::by_id(std::vector<std::string> ids,
                                   RuleAction action, std::string role) {
  SelectionRule r;
  r.kind = RuleKind::kById;
  r.ids = std::move(ids);
  r.action = action;
  r.role = std::move(role);
  return r;
}

SelectionRule SelectionRule::by_class(ContentClass cls, RuleAction action,
                                      std::string role) {
  SelectionRule r;
  r.kind = RuleKind::kByClass;
  r.content_class = cls;
  r.action = action;
  r.role = std::move(role);
  return r;
}

SelectionRule SelectionRule::by_pattern(std::string pattern, RuleAction action,
                                        std::string role) {
  SelectionRule r;
  r.kind = RuleKind::kByPattern;
  r.pattern = std::move(pattern);
  r.action = action;
  r.role = std::move(role);
  return r;
}

const PlanEntry* ReplacementPlan::find(std::string_view id) const {
  for (const auto& e : entries) {
    if (e.fragment_id == id) return &e;
  }
  return nullptr;
}

void validate_rule(const SelectionRule& rule) {
  switch (rule.kind) {
    case RuleKind::kById:
      if (rule.ids.empty()) throw RuleError("by_id rule with empty id list");
      break;
    case RuleKind::kByPattern:
      if (rule.pattern.empty()) throw RuleError("by_pattern rule with empty pattern");
      compile_pattern(rule.pattern);
      break;
    case RuleKind::kByClass:
      break;
  }
}

ReplacementPlan select_targets(const LayoutDocument& doc,
                               const std::vector<SelectionRule>& rules) {
  std::set<std::string_view> known;
  for (const auto& f : doc.fragments) known.insert(f.id);

  std::vector<std::optional<std::regex>> compiled;
  compiled.reserve(rules.size());
  for (const auto& rule : rules) {
    validate_rule(rule);
    if (rule.kind == RuleKind::kById) {
      for (const auto& id : rule.ids) {
        if (!known.count(id)) {
          throw RuleError("selection rule references unknown fragment " + id);
        }
      }
    }
    compiled.push_back(rule.kind == RuleKind::kByPattern
                           ? std::optional(compile_pattern(rule.pattern))
                           : std::nullopt);
  }

  ReplacementPlan plan;
  for (const auto& f : doc.fragments) {
    const SelectionRule* decisive = nullptr;
    for (std::size_t i = 0; i < rules.size(); ++i) {
      const auto& rule = rules[i];
      bool matches = false;
      switch (rule.kind) {
        case RuleKind::kById:
          matches = std::find(rule.ids.begin(), rule.ids.end(), f.id) !=
                    rule.ids.end();
          break;
        case RuleKind::kByClass:
          matches = f.content_class == rule.content_class;
          break;
        case RuleKind::kByPattern:
          matches = std::regex_search(f.text, *compiled[i]);
          break;
      }
      if (matches) decisive = &rule;
    }
    const bool include = decisive != nullptr
                             ? decisive->action == RuleAction::kInclude
                             : f.replace;
    if (include) {
      plan.entries.push_back({f.id, f.text, f.content_class,
                              decisive != nullptr ? decisive->role : ""});
    }
  }
  return plan;
}

LayoutDocument mark_targets(const LayoutDocument& doc,
                            const ReplacementPlan& plan) {
  LayoutDocument out = doc;
  for (auto& f : out.fragments) f.replace = plan.find(f.id) != nullptr;
  return out;
}

}  // namespace invsynth
