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

// Closed-form font fitting for the metrics fixture (advance 0.6 em per
// character, line height 1.2 em), computed in exact integer arithmetic.

#pragma once

#include <optional>

namespace invsynth::testing {

/// Sizes tried by the fitting loop, largest first: s0, s0 - step, ...
/// clamped at min_size. Returns nullopt when nothing fits.
/// Box sides are integers; n is the character count (n >= 1).
inline std::optional<int> fixture_fit(int n, int box_w, int box_h, int min_size, int step) {
  const int s0 = (10 * box_h) / 12;  // largest s with 1.2 s <= h
  if (s0 < min_size) return std::nullopt;
  const auto fits = [&](int s) { return 6 * n * s < 10 * box_w; };
  int s = s0;
  while (!fits(s)) {
    if (s == min_size) return std::nullopt;
    s = s - step < min_size ? min_size : s - step;
  }
  return s;
}

}  // namespace invsynth::testing
