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

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace invsynth {

/// Root of every exception thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Invalid layout text or document. Carries the offending fragment and field
/// when the failure can be attributed to one.
class LayoutError : public Error {
 public:
  LayoutError(std::string message, std::string fragment_id = {},
              std::string field = {})
      : Error(std::move(message)),
        fragment_id_(std::move(fragment_id)),
        field_(std::move(field)) {}

  const std::string& fragment_id() const noexcept { return fragment_id_; }
  const std::string& field() const noexcept { return field_; }

 private:
  std::string fragment_id_;
  std::string field_;
};

/// A selection rule is malformed or references an unknown fragment.
class RuleError : public Error {
 public:
  using Error::Error;
};

enum class ResponseErrorKind {
  kUnparseable,
  kMultipleObjects,
  kMissingId,
  kExtraneousId,
  kInvalidValue,
};

const char* to_string(ResponseErrorKind kind) noexcept;

/// The text returned by a generator does not satisfy the response contract.
class ResponseError : public Error {
 public:
  ResponseError(ResponseErrorKind kind, std::string message,
                std::string fragment_id = {})
      : Error(std::move(message)),
        kind_(kind),
        fragment_id_(std::move(fragment_id)) {}

  ResponseErrorKind kind() const noexcept { return kind_; }
  const std::string& fragment_id() const noexcept { return fragment_id_; }

 private:
  ResponseErrorKind kind_;
  std::string fragment_id_;
};

enum class GenerationErrorKind {
  kConfig,
  kRetriesExhausted,
  kTransport,
  kAuth,
};

const char* to_string(GenerationErrorKind kind) noexcept;

class GenerationError : public Error {
 public:
  GenerationError(GenerationErrorKind kind, std::string message,
                  std::vector<std::string> violations = {})
      : Error(std::move(message)),
        kind_(kind),
        violations_(std::move(violations)) {}

  GenerationErrorKind kind() const noexcept { return kind_; }
  /// Violations reported for the last attempt (retries-exhausted only).
  const std::vector<std::string>& violations() const noexcept {
    return violations_;
  }

 private:
  GenerationErrorKind kind_;
  std::vector<std::string> violations_;
};

/// Image decoding/encoding failures and invalid raster arguments.
class ImageError : public Error {
 public:
  using Error::Error;
};

class FontError : public Error {
 public:
  using Error::Error;
};

/// Text cannot be fitted into its box even at the minimum font size.
class FitError : public Error {
 public:
  FitError(std::string message, std::string text, int min_size)
      : Error(std::move(message)), text_(std::move(text)), min_size_(min_size) {}

  const std::string& text() const noexcept { return text_; }
  int min_size() const noexcept { return min_size_; }

 private:
  std::string text_;
  int min_size_;
};

class ConfigError : public Error {
 public:
  using Error::Error;
};

/// A pipeline stage failed; names the stage and, if known, the fragment.
class PipelineError : public Error {
 public:
  PipelineError(std::string stage, std::string message,
                std::string fragment_id = {})
      : Error(stage + ": " + message +
              (fragment_id.empty() ? std::string{} : " [" + fragment_id + "]")),
        stage_(std::move(stage)),
        fragment_id_(std::move(fragment_id)) {}

  const std::string& stage() const noexcept { return stage_; }
  const std::string& fragment_id() const noexcept { return fragment_id_; }

 private:
  std::string stage_;
  std::string fragment_id_;
};

}  // namespace invsynth
