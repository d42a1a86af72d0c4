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

#include <string>

#include "invsynth/layout.hpp"
#include "json.hpp"

namespace invsynth::detail {

using ordered_json = nlohmann::ordered_json;

inline ordered_json to_json(const BBox& b) {
  ordered_json box = ordered_json::object();
  box["x_min"] = b.x_min;
  box["y_min"] = b.y_min;
  box["x_max"] = b.x_max;
  box["y_max"] = b.y_max;
  return box;
}

/// Lenient reader for files this library wrote itself.
inline BBox bbox_from_json(const ordered_json& node) {
  return {node.at("x_min").get<double>(), node.at("y_min").get<double>(),
          node.at("x_max").get<double>(), node.at("y_max").get<double>()};
}

/// Canonical pretty form used for every JSON file the pipeline emits.
inline std::string dump_canonical(const ordered_json& value) {
  return value.dump(2) + "\n";
}

}  // namespace invsynth::detail
