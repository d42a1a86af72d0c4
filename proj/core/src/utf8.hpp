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

#pragma once

#include <cstddef>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

namespace invsynth::detail {

inline constexpr char32_t kReplacementChar = 0xFFFD;

/// Decodes UTF-8; malformed sequences decode to U+FFFD one byte at a time.
std::u32string decode_utf8(std::string_view text);
std::size_t codepoint_count(std::string_view text);
bool has_line_break(std::string_view text);
std::string_view trim(std::string_view text);

std::string read_file(const std::filesystem::path& path);
/// Writes via a sibling temporary and rename so readers never see a
/// half-written file.
void write_file(const std::filesystem::path& path, std::string_view bytes);

}  // namespace invsynth::detail
