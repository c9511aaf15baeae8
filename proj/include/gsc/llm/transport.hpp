// Copyright 2026 The Authors.
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

// Model transports. Everything the adapter asks of a language model is a
// CompletionRequest; the response carries the completion text and the
// top log-probabilities of the first generated token.
//
// Recorded-exchange files are JSON lines:
//   {"key": "<16 hex digits>", "prompt": "...", "response": {"text": "...",
//    "top_logprobs": [{"token": "3", "logprob": -0.69}, ...]}}
// where key = request_key(request). "prompt" is informational.

#ifndef GSC_LLM_TRANSPORT_HPP_
#define GSC_LLM_TRANSPORT_HPP_

#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <map>
#include <mutex>
#include <string>
#include <thread>
#include <unordered_map>
#include <vector>

#include "gsc/llm/types.hpp"
#include "gsc/random.hpp"
#include "json.hpp"

namespace gsc::llm {

struct CompletionRequest {
  std::string model;
  std::string prompt;
  double temperature = 0.0;
  int max_tokens = 1;
  int top_logprobs = 0;  // 0: no log-probabilities requested
};

struct TokenLogprob {
  std::string token;
  double logprob = 0.0;
};

struct CompletionResponse {
  std::string text;
  std::vector<TokenLogprob> top_logprobs;
};

class Transport {
 public:
  virtual ~Transport() = default;
  virtual CompletionResponse complete(const CompletionRequest& request) = 0;
};

// Stable identity of a request, used to look up recorded exchanges.
inline std::string request_key(const CompletionRequest& r) {
  char temp[32];
  std::snprintf(temp, sizeof temp, "%.6f", r.temperature);
  std::uint64_t h = fnv1a64(r.model);
  h = fnv1a64("\x1f", h);
  h = fnv1a64(temp, h);
  h = fnv1a64("\x1f" + std::to_string(r.max_tokens) + "\x1f" + std::to_string(r.top_logprobs) +
                  "\x1f",
              h);
  return hex64(fnv1a64(r.prompt, h));
}

inline nlohmann::json response_to_json(const CompletionResponse& resp) {
  nlohmann::json lp = nlohmann::json::array();
  for (const auto& t : resp.top_logprobs) lp.push_back({{"token", t.token}, {"logprob", t.logprob}});
  return {{"text", resp.text}, {"top_logprobs", std::move(lp)}};
}

inline CompletionResponse response_from_json(const nlohmann::json& j) {
  CompletionResponse r;
  if (j.contains("text") && j["text"].is_string()) r.text = j["text"].get<std::string>();
  if (j.contains("top_logprobs")) {
    for (const auto& t : j["top_logprobs"]) {
      r.top_logprobs.push_back({t.at("token").get<std::string>(), t.at("logprob").get<double>()});
    }
  }
  return r;
}

// Response whose first-token distribution puts the given probabilities on
// the given tokens.
inline CompletionResponse logprob_response(const std::map<std::string, double>& probabilities,
                                           std::string text = {}) {
  CompletionResponse r;
  r.text = std::move(text);
  for (const auto& [tok, p] : probabilities) r.top_logprobs.push_back({tok, std::log(p)});
  return r;
}

// Replays recorded exchanges; unknown requests are a TransportError.
class ScriptedTransport : public Transport {
 public:
  ScriptedTransport() = default;

  static ScriptedTransport from_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw TransportError("cannot open recorded exchanges '" + path + "'");
    ScriptedTransport t;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
      ++lineno;
      if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
      try {
        const auto j = nlohmann::json::parse(line);
        t.add(j.at("key").get<std::string>(), response_from_json(j.at("response")));
      } catch (const nlohmann::json::exception& e) {
        throw TransportError(path + ":" + std::to_string(lineno) +
                             ": malformed recorded exchange (" + e.what() + ")");
      }
    }
    return t;
  }

  void add(const std::string& key, CompletionResponse response) {
    responses_[key] = std::move(response);
  }
  void add(const CompletionRequest& request, CompletionResponse response) {
    add(request_key(request), std::move(response));
  }
  std::size_t size() const { return responses_.size(); }

  CompletionResponse complete(const CompletionRequest& request) override {
    const auto it = responses_.find(request_key(request));
    if (it == responses_.end()) {
      throw TransportError("no recorded response for request " + request_key(request));
    }
    return it->second;
  }

 private:
  std::unordered_map<std::string, CompletionResponse> responses_;
};

// Test double: answers through a callback.
class CallbackTransport : public Transport {
 public:
  using Handler = std::function<CompletionResponse(const CompletionRequest&)>;
  explicit CallbackTransport(Handler h) : handler_(std::move(h)) {}
  CompletionResponse complete(const CompletionRequest& request) override {
    std::lock_guard lock(mu_);
    ++calls_;
    return handler_(request);
  }
  std::size_t calls() const { return calls_; }

 private:
  Handler handler_;
  std::mutex mu_;
  std::size_t calls_ = 0;
};

// Forwards to another transport and appends every exchange to a
// recorded-exchange file, so a live session can be replayed offline.
class RecordingTransport : public Transport {
 public:
  RecordingTransport(Transport& inner, const std::string& path)
      : inner_(inner), out_(path, std::ios::app) {
    if (!out_) throw TransportError("cannot open '" + path + "' for recording");
  }
  CompletionResponse complete(const CompletionRequest& request) override {
    CompletionResponse resp = inner_.complete(request);
    std::lock_guard lock(mu_);
    out_ << nlohmann::json{{"key", request_key(request)},
                           {"prompt", request.prompt},
                           {"response", response_to_json(resp)}}
                .dump()
         << '\n';
    out_.flush();
    return resp;
  }

 private:
  Transport& inner_;
  std::ofstream out_;
  std::mutex mu_;
};

struct RetryPolicy {
  int attempts = 3;
  std::chrono::milliseconds backoff{500};
};

class RetryingTransport : public Transport {
 public:
  RetryingTransport(Transport& inner, RetryPolicy policy) : inner_(inner), policy_(policy) {}
  CompletionResponse complete(const CompletionRequest& request) override {
    for (int attempt = 1;; ++attempt) {
      try {
        return inner_.complete(request);
      } catch (const TransportError& e) {
        if (attempt >= policy_.attempts) {
          throw TransportError(std::string(e.what()) + " (after " + std::to_string(attempt) +
                               " attempts)");
        }
        std::this_thread::sleep_for(policy_.backoff * attempt);
      }
    }
  }

 private:
  Transport& inner_;
  RetryPolicy policy_;
};

}  // namespace gsc::llm

#endif  // GSC_LLM_TRANSPORT_HPP_
