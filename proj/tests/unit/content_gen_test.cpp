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

#include <gtest/gtest.h>

#include <sstream>

#include "invsynth/error.hpp"
#include "test_support.hpp"

namespace invsynth {
namespace {

ReplacementPlan plan_of(std::initializer_list<PlanEntry> entries) {
  ReplacementPlan plan;
  plan.entries = entries;
  return plan;
}

ReplacementPlan three_entry_plan() {
  return plan_of({{"frag_000", "Acme Corp", ContentClass::kFreeText, {}},
                  {"frag_001", "12/03/2024", ContentClass::kDate, {}},
                  {"frag_002", "$10.00", ContentClass::kCurrencyAmount, {}}});
}

ReplacementPlan sample_plan() {
  return select_targets(read_layout_file(testing::sample_layout_path()), {});
}

std::vector<std::string> lines_of(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream in(text);
  for (std::string line; std::getline(in, line);) out.push_back(line);
  return out;
}

TEST(BuildPrompt, ContainsEntryLine) {
  const auto prompt =
      build_prompt(plan_of({{"frag_003", "12/03/2024", ContentClass::kDate, {}}}));
  const auto lines = lines_of(prompt);
  EXPECT_NE(std::find(lines.begin(), lines.end(), "frag_003: 12/03/2024"), lines.end())
      << prompt;
}

TEST(BuildPrompt, CarriesTheContractInstructions) {
  const auto prompt = build_prompt(three_entry_plan());
  EXPECT_NE(prompt.find("a date with a date, a currency amount with a currency amount"),
            std::string::npos);
  EXPECT_NE(prompt.find("Return only a single JSON object keyed by fragment ID"),
            std::string::npos);
  EXPECT_EQ(prompt, build_prompt(three_entry_plan()));
}

TEST(BuildPrompt, ListsEntriesInPlanOrder) {
  const auto plan = plan_of({{"frag_009", "B", ContentClass::kFreeText, {}},
                             {"frag_002", "A", ContentClass::kFreeText, {}}});
  const auto prompt = build_prompt(plan);
  EXPECT_LT(prompt.find("frag_009: B"), prompt.find("frag_002: A"));
}

TEST(BuildPrompt, SamplePlanHasTwelveEntryLines) {
  const auto plan = sample_plan();
  ASSERT_EQ(plan.size(), 12u);
  const auto lines = lines_of(build_prompt(plan));
  const auto entry_lines = std::count_if(lines.begin(), lines.end(), [](const std::string& l) {
    return l.rfind("frag_", 0) == 0 && l.find(": ") != std::string::npos;
  });
  EXPECT_EQ(entry_lines, 12);
}

TEST(BuildPrompt, EmptyPlanIsError) {
  try {
    build_prompt({});
    FAIL();
  } catch (const GenerationError& e) {
    EXPECT_EQ(e.kind(), GenerationErrorKind::kConfig);
  }
}

TEST(BuildRetryPrompt, AppendsViolations) {
  const auto prompt = build_retry_prompt(three_entry_plan(), {"missing_id: frag_002"});
  EXPECT_EQ(prompt.rfind(build_prompt(three_entry_plan()), 0), 0u);
  EXPECT_NE(prompt.find("- missing_id: frag_002"), std::string::npos);
}

TEST(ParseResponse, SingleEntry) {
  const auto plan = plan_of({{"frag_000", "Acme", ContentClass::kFreeText, {}}});
  const auto map = parse_response(R"({"frag_000": "Northwind Traders"})", plan);
  EXPECT_EQ(map, (ReplacementMap{{"frag_000", "Northwind Traders"}}));
}

TEST(ParseResponse, FencedEqualsUnfenced) {
  const auto plan = three_entry_plan();
  const std::string body =
      R"({"frag_000": "Globex", "frag_001": "01/02/2023", "frag_002": "$5.00"})";
  EXPECT_EQ(parse_response("```json\n" + body + "\n```", plan), parse_response(body, plan));
  EXPECT_EQ(parse_response("```\n" + body + "\n```\n", plan), parse_response(body, plan));
}

TEST(ParseResponse, MissingIdIsNamed) {
  try {
    parse_response(R"({"frag_000": "Globex", "frag_001": "01/02/2023"})", three_entry_plan());
    FAIL();
  } catch (const ResponseError& e) {
    EXPECT_EQ(e.kind(), ResponseErrorKind::kMissingId);
    EXPECT_EQ(e.fragment_id(), "frag_002");
    EXPECT_NE(std::string(e.what()).find("frag_002"), std::string::npos);
  }
}

TEST(ParseResponse, ErrorKindsAreDistinct) {
  const auto plan = plan_of({{"frag_000", "Acme", ContentClass::kFreeText, {}}});
  const auto kind_of = [&](const std::string& raw) {
    try {
      parse_response(raw, plan);
    } catch (const ResponseError& e) {
      return e.kind();
    }
    ADD_FAILURE() << "accepted: " << raw;
    return ResponseErrorKind::kUnparseable;
  };
  EXPECT_EQ(kind_of("Sure! Here you go."), ResponseErrorKind::kUnparseable);
  EXPECT_EQ(kind_of(R"({"frag_000": "A"} {"frag_000": "B"})"), ResponseErrorKind::kMultipleObjects);
  EXPECT_EQ(kind_of(R"({})"), ResponseErrorKind::kMissingId);
  EXPECT_EQ(kind_of(R"({"frag_000": "A", "frag_007": "B"})"), ResponseErrorKind::kExtraneousId);
  EXPECT_EQ(kind_of(R"({"frag_000": "A\nB"})"), ResponseErrorKind::kInvalidValue);
  EXPECT_EQ(kind_of(R"({"frag_000": "  "})"), ResponseErrorKind::kInvalidValue);
  EXPECT_EQ(kind_of(R"({"frag_000": 12})"), ResponseErrorKind::kInvalidValue);
}

TEST(ParseResponse, InvertsSerialization) {
  const auto plan = sample_plan();
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const auto map = mock_generate(plan, seed);
    EXPECT_EQ(parse_response(serialize_replacement_map(map), plan), map);
  }
}

TEST(ValidateReplacements, MatchingClassIsClean) {
  const auto plan = plan_of({{"frag_001", "12/03/2024", ContentClass::kDate, {}}});
  EXPECT_TRUE(validate_replacements({{"frag_001", "07/11/2023"}}, plan).empty());
}

TEST(ValidateReplacements, WrongClassIsOneViolation) {
  const auto plan = plan_of({{"frag_002", "$10.00", ContentClass::kCurrencyAmount, {}}});
  const auto v = validate_replacements({{"frag_002", "next Tuesday"}}, plan);
  ASSERT_EQ(v.size(), 1u);
  EXPECT_EQ(v[0].fragment_id, "frag_002");
  EXPECT_EQ(v[0].expected, ContentClass::kCurrencyAmount);
  EXPECT_EQ(v[0].actual, ContentClass::kFreeText);
}

TEST(ValidateReplacements, SampleMockMapIsClean) {
  const auto plan = sample_plan();
  const auto map = mock_generate(plan, 42);
  EXPECT_TRUE(validate_replacements(map, plan).empty());
  // Independent re-check with the classifier itself.
  for (const auto& e : plan.entries) {
    EXPECT_EQ(classify_fragment(map.at(e.fragment_id)), e.content_class) << e.fragment_id;
  }
}

TEST(GeneratorConfig, RemoteNeedsEndpointAndAuth) {
  GeneratorConfig c;
  c.mode = GeneratorMode::kRemote;
  EXPECT_THROW(validate_generator_config(c), GenerationError);
  c.endpoint = "http://localhost:1/v1";
  EXPECT_THROW(validate_generator_config(c), GenerationError);
  c.auth_env = "TOKEN";
  EXPECT_NO_THROW(validate_generator_config(c));
  EXPECT_NO_THROW(validate_generator_config(GeneratorConfig{}));
}

TEST(Generate, MockModeIsMockGenerate) {
  const auto plan = sample_plan();
  GeneratorConfig c;
  c.seed = 99;
  EXPECT_EQ(generate(plan, c), mock_generate(plan, 99));
}

}  // namespace
}  // namespace invsynth
