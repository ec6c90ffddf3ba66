// Copyright 2026 The rtsarena Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <chrono>
#include <functional>
#include <map>
#include <mutex>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"

namespace rtsarena::agent {

struct ChatParams {
  int max_new_tokens = 6144;
  double temperature = 0.1;
  double top_p = 0.8;
  int top_k = 20;
  double repetition_penalty = 1.1;
  double presence_penalty = 0.0;
};

struct ChatResult {
  std::string text;
  int tokens_in = 0;
  int tokens_out = 0;
  std::vector<std::string> retries;  // one entry per failed attempt before success
};

enum class ChatErrorKind { kNetwork, kTimeout, kHttpStatus, kProtocol, kMockMiss };
std::string_view chat_error_name(ChatErrorKind k);

class ChatError : public std::runtime_error {
 public:
  ChatError(ChatErrorKind kind, const std::string& what, int status = 0)
      : std::runtime_error(what), kind_(kind), status_(status) {}
  ChatErrorKind kind() const { return kind_; }
  int status() const { return status_; }
  bool retryable() const;

 private:
  ChatErrorKind kind_;
  int status_;
};

// One completion attempt; implementations must be safe to call from several
// threads at once.
class Backend {
 public:
  virtual ~Backend() = default;
  virtual ChatResult complete(const std::string& prompt, const ChatParams& params) = 0;
};

struct RetryPolicy {
  int max_attempts = 3;
  std::chrono::milliseconds initial_backoff{500};
  double multiplier = 2.0;
  std::function<void(std::chrono::milliseconds)> sleep;  // default: this_thread::sleep_for
};

// Calls backend.complete with bounded retries on retryable errors.
ChatResult chat(Backend& backend, const std::string& prompt, const ChatParams& params,
                const RetryPolicy& retry = {});

int approx_tokens(std::string_view text);
// 16 lowercase hex digits.
std::string prompt_hash(std::string_view prompt);

struct HttpConfig {
  std::string endpoint;  // e.g. https://host:443/v1/chat/completions
  std::string model;
  std::string api_key;   // sent as a bearer token when non-empty
  std::chrono::seconds timeout{120};
};

// The request body for the standard chat-completion endpoint.
nlohmann::json build_request_body(const std::string& model, const std::string& prompt,
                                  const ChatParams& params);

class HttpBackend : public Backend {
 public:
  explicit HttpBackend(HttpConfig config);
  // Reads RTSARENA_API_KEY when config.api_key is empty.
  static HttpBackend from_env(std::string endpoint, std::string model);
  ChatResult complete(const std::string& prompt, const ChatParams& params) override;
  const HttpConfig& config() const { return config_; }

 private:
  HttpConfig config_;
};

struct CannedResponse {
  std::string text;
  int tokens_in = 0;
  int tokens_out = 0;
};

// Replays responses keyed by prompt hash; a responder function can fill
// misses (an offline stand-in model).
class MockBackend : public Backend {
 public:
  using Responder = std::function<std::string(const std::string& prompt)>;

  MockBackend() = default;
  explicit MockBackend(Responder responder) : responder_(std::move(responder)) {}

  void add(const std::string& prompt, CannedResponse response);
  void add_hash(const std::string& hash, CannedResponse response);
  // JSONL lines of {"prompt_hash", "text", "tokens_in", "tokens_out"}.
  void load_jsonl(const std::string& path);

  ChatResult complete(const std::string& prompt, const ChatParams& params) override;
  std::size_t calls() const;

 private:
  mutable std::mutex mu_;
  std::map<std::string, CannedResponse> canned_;
  Responder responder_;
  std::size_t calls_ = 0;
};

}  // namespace rtsarena::agent
