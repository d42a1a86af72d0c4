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

// Content classification and selection of the fragments to replace.

#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "invsynth/layout.hpp"

namespace invsynth {

/// First matching class in precedence order date, currency_amount, email,
/// phone, numeric_id; free_text otherwise. Matching looks only at the shape
/// of the trimmed text (digits are interchangeable), so resampling digits
/// never changes the class.
ContentClass classify_fragment(std::string_view text);

enum class RuleKind { kById, kByClass, kByPattern };
enum class RuleAction { kInclude, kExclude };

struct SelectionRule {
  RuleKind kind = RuleKind::kById;
  RuleAction action = RuleAction::kInclude;
  std::vector<std::string> ids;                   // kById
  ContentClass content_class = ContentClass::kFreeText;  // kByClass
  std::string pattern;                            // kByPattern, ECMAScript
  /// Optional ground-truth role name given to fragments this rule includes.
  std::string role;

  static SelectionRule by_id(std::vector<std::string> ids, RuleAction action,
                             std::string role = {});
  static SelectionRule by_class(ContentClass cls, RuleAction action,
                                std::string role = {});
  static SelectionRule by_pattern(std::string pattern, RuleAction action,
                                  std::string role = {});
};

struct PlanEntry {
  std::string fragment_id;
  std::string original_text;
  ContentClass content_class = ContentClass::kFreeText;
  std::string role;

  bool operator==(const PlanEntry&) const = default;
};

struct ReplacementPlan {
  std::vector<PlanEntry> entries;  // document order

  bool empty() const noexcept { return entries.empty(); }
  std::size_t size() const noexcept { return entries.size(); }
  const PlanEntry* find(std::string_view id) const;

  bool operator==(const ReplacementPlan&) const = default;
};

/// Throws RuleError if a rule payload is empty or its pattern does not
/// compile.
void validate_rule(const SelectionRule& rule);

/// Evaluates the rules in order for each fragment; the last matching rule
/// decides. Fragments no rule matches fall back to their `replace` flag.
/// Throws RuleError for by_id rules naming fragments the document lacks.
ReplacementPlan select_targets(const LayoutDocument& doc,
                               const std::vector<SelectionRule>& rules);

/// Copy of `doc` whose `replace` flags are true exactly for planned IDs.
LayoutDocument mark_targets(const LayoutDocument& doc,
                            const ReplacementPlan& plan);

}  // namespace invsynth
