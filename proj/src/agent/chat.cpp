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

#include "rtsarena/agent/chat.hpp"

#include <cstdlib>
#include <fstream>
#include <thread>

#include "httplib.h"
#include "rtsarena/common/digest.hpp"

namespace rtsarena::agent {

using nlohmann::json;

std::string_view chat_error_name(ChatErrorKind k) {
  switch (k) {
    case ChatErrorKind::kNetwork: return "network";
    case ChatErrorKind::kTimeout: return "timeout";
    case ChatErrorKind::kHttpStatus: return "http_status";
    case ChatErrorKind::kProtocol: return "protocol";
    case ChatErrorKind::kMockMiss: return "mock_miss";
  }
  return "unknown";
}

bool ChatError::retryable() const {
  switch (kind_) {
    case ChatErrorKind::kNetwork:
    case ChatErrorKind::kTimeout:
      return true;
    case ChatErrorKind::kHttpStatus:
      return status_ == 408 || status_ == 429 || status_ >= 500;
    default:
      return false;
  }
}

ChatResult chat(Backend& backend, const std::string& prompt, const ChatParams& params,
                const RetryPolicy& retry) {
  std::vector<std::string> log;
  auto backoff = retry.initial_backoff;
  for (int attempt = 1;; ++attempt) {
    try {
      auto r = backend.complete(prompt, params);
      r.retries = std::move(log);
      return r;
    } catch (const ChatError& e) {
      if (!e.retryable() || attempt >= retry.max_attempts) throw;
      log.push_back(std::string(chat_error_name(e.kind())) + ": " + e.what());
      if (retry.sleep) {
        retry.sleep(backoff);
      } else {
        std::this_thread::sleep_for(backoff);
      }
      backoff = std::chrono::milliseconds(
          static_cast<long long>(static_cast<double>(backoff.count()) * retry.multiplier));
    }
  }
}

int approx_tokens(std::string_view text) { return static_cast<int>((text.size() + 3) / 4); }

std::string prompt_hash(std::string_view prompt) {
  return Fnv1a().bytes(prompt.data(), prompt.size()).hex();
}

json build_request_body(const std::string& model, const std::string& prompt,
                        const ChatParams& p) {
  return {{"model", model},
          {"messages", json::array({{{"role", "user"}, {"content", prompt}}})},
          {"max_tokens", p.max_new_tokens},
          {"temperature", p.temperature},
          {"top_p", p.top_p},
          {"top_k", p.top_k},
          {"repetition_penalty", p.repetition_penalty},
          {"presence_penalty", p.presence_penalty}};
}

HttpBackend::HttpBackend(HttpConfig config) : config_(std::move(config)) {}

HttpBackend HttpBackend::from_env(std::string endpoint, std::string model) {
  HttpConfig c;
  c.endpoint = std::move(endpoint);
  c.model = std::move(model);
  if (const char* key = std::getenv("RTSARENA_API_KEY")) c.api_key = key;
  return HttpBackend(std::move(c));
}

namespace {

// Splits "scheme://host[:port]/path" into the client origin and path.
std::pair<std::string, std::string> split_url(const std::string& url) {
  const auto scheme = url.find("://");
  if (scheme == std::string::npos) throw ChatError(ChatErrorKind::kProtocol, "bad endpoint " + url);
  const auto slash = url.find('/', scheme + 3);
  if (slash == std::string::npos) return {url, "/"};
  return {url.substr(0, slash), url.substr(slash)};
}

}  // namespace

ChatResult HttpBackend::complete(const std::string& prompt, const ChatParams& params) {
  const auto [origin, path] = split_url(config_.endpoint);
  httplib::Client client(origin);
  client.set_connection_timeout(config_.timeout);
  client.set_read_timeout(config_.timeout);
  client.set_write_timeout(config_.timeout);
  httplib::Headers headers;
  if (!config_.api_key.empty()) headers.emplace("Authorization", "Bearer " + config_.api_key);
  const auto body = build_request_body(config_.model, prompt, params).dump();
  auto res = client.Post(path, headers, body, "application/json");
  if (!res) {
    const auto err = res.error();
    const auto kind = err == httplib::Error::Read || err == httplib::Error::Write ||
                              err == httplib::Error::ConnectionTimeout
                          ? ChatErrorKind::kTimeout
                          : ChatErrorKind::kNetwork;
    throw ChatError(kind, httplib::to_string(err));
  }
  if (res->status != 200) {
    throw ChatError(ChatErrorKind::kHttpStatus,
                    "HTTP " + std::to_string(res->status) + ": " + res->body.substr(0, 200),
                    res->status);
  }
  try {
    const json j = json::parse(res->body);
    ChatResult r;
    r.text = j.at("choices").at(0).at("message").at("content").get<std::string>();
    if (j.contains("usage")) {
      r.tokens_in = j["usage"].value("prompt_tokens", 0);
      r.tokens_out = j["usage"].value("completion_tokens", 0);
    } else {
      r.tokens_in = approx_tokens(prompt);
      r.tokens_out = approx_tokens(r.text);
    }
    return r;
  } catch (const json::exception& e) {
    throw ChatError(ChatErrorKind::kProtocol, std::string("unexpected response: ") + e.what());
  }
}

void MockBackend::add(const std::string& prompt, CannedResponse response) {
  add_hash(prompt_hash(prompt), std::move(response));
}

void MockBackend::add_hash(const std::string& hash, CannedResponse response) {
  std::lock_guard lock(mu_);
  canned_[hash] = std::move(response);
}

void MockBackend::load_jsonl(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const json j = json::parse(line);
    add_hash(j.at("prompt_hash").get<std::string>(),
             {j.at("text").get<std::string>(), j.value("tokens_in", 0), j.value("tokens_out", 0)});
  }
}

ChatResult MockBackend::complete(const std::string& prompt, const ChatParams&) {
  const auto hash = prompt_hash(prompt);
  {
    std::lock_guard lock(mu_);
    ++calls_;
    auto it = canned_.find(hash);
    if (it != canned_.end()) {
      return {it->second.text, it->second.tokens_in, it->second.tokens_out, {}};
    }
  }
  if (!responder_) throw ChatError(ChatErrorKind::kMockMiss, "no canned response for " + hash);
  ChatResult r;
  r.text = responder_(prompt);
  r.tokens_in = approx_tokens(prompt);
  r.tokens_out = approx_tokens(r.text);
  return r;
}

std::size_t MockBackend::calls() const {
  std::lock_guard lock(mu_);
  return calls_;
}

}  // namespace rtsarena::agent
