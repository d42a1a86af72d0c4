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

// Generic chat-completion client: one user message in, reply text out.

#include <cmath>
#include <cstdlib>

#include "httplib.h"
#include "invsynth/content_gen.hpp"
#include "invsynth/error.hpp"
#include "json_util.hpp"

namespace invsynth {

namespace {

using detail::ordered_json;

struct Endpoint {
  std::string origin;  // scheme://host[:port]
  std::string path;
};

Endpoint split_endpoint(const std::string& url) {
  const auto scheme_end = url.find("://");
  if (scheme_end == std::string::npos) {
    throw GenerationError(GenerationErrorKind::kConfig,
                          "endpoint must be an absolute http(s) URL: " + url);
  }
  const auto scheme = url.substr(0, scheme_end);
  if (scheme != "http" && scheme != "https") {
    throw GenerationError(GenerationErrorKind::kConfig,
                          "unsupported endpoint scheme: " + scheme);
  }
  const auto path_start = url.find('/', scheme_end + 3);
  if (path_start == std::string::npos) return {url, "/"};
  return {url.substr(0, path_start), url.substr(path_start)};
}

/// Pulls the assistant text out of an OpenAI-style completion body. Bodies
/// of any other shape are passed through untouched.
std::string extract_reply(const std::string& body) {
  const auto root = ordered_json::parse(body, nullptr, false);
  if (root.is_discarded() || !root.is_object()) return body;
  const auto choices = root.find("choices");
  if (choices == root.end() || !choices->is_array() || choices->empty()) {
    return body;
  }
  const auto& first = (*choices)[0];
  if (first.contains("message") && first["message"].contains("content") &&
      first["message"]["content"].is_string()) {
    return first["message"]["content"].get<std::string>();
  }
  if (first.contains("text") && first["text"].is_string()) {
    return first["text"].get<std::string>();
  }
  return body;
}

}  // namespace

std::string http_completion(const GeneratorConfig& config,
                            const std::string& prompt) {
  const char* token = std::getenv(config.auth_env.c_str());
  if (config.auth_env.empty() || token == nullptr || *token == '\0') {
    throw GenerationError(GenerationErrorKind::kAuth,
                          "auth token variable '" + config.auth_env +
                              "' is not set");
  }
  const auto endpoint = split_endpoint(config.endpoint);

  ordered_json request = ordered_json::object();
  request["model"] = config.model;
  request["messages"] = ordered_json::array(
      {ordered_json{{"role", "user"}, {"content", prompt}}});
  if (config.temperature) request["temperature"] = *config.temperature;

  httplib::Client client(endpoint.origin);
  const auto secs = static_cast<time_t>(config.timeout_seconds);
  const auto usecs = static_cast<time_t>(
      std::round((config.timeout_seconds - static_cast<double>(secs)) * 1e6));
  client.set_connection_timeout(secs, usecs);
  client.set_read_timeout(secs, usecs);
  client.set_write_timeout(secs, usecs);

  httplib::Headers headers{{"Authorization", std::string("Bearer ") + token}};
  auto result = client.Post(endpoint.path, headers, request.dump(),
                            "application/json");
  if (!result) {
    throw GenerationError(GenerationErrorKind::kTransport,
                          "request to " + config.endpoint + " failed: " +
                              httplib::to_string(result.error()));
  }
  if (result->status == 401 || result->status == 403) {
    throw GenerationError(GenerationErrorKind::kAuth,
                          "endpoint rejected credentials (HTTP " +
                              std::to_string(result->status) + ")");
  }
  if (result->status < 200 || result->status >= 300) {
    throw GenerationError(GenerationErrorKind::kTransport,
                          "endpoint returned HTTP " +
                              std::to_string(result->status));
  }
  return extract_reply(result->body);
}

}  // namespace invsynth
