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

// Live transport for chat-completion style endpoints. https:// endpoints
// need CPPHTTPLIB_OPENSSL_SUPPORT defined and OpenSSL linked.

#ifndef GSC_LLM_HTTP_TRANSPORT_HPP_
#define GSC_LLM_HTTP_TRANSPORT_HPP_

#include <cstdlib>
#include <string>

#include "gsc/llm/transport.hpp"
#include "httplib.h"
#include "json.hpp"

namespace gsc::llm {

struct EndpointConfig {
  std::string base_url = "https://api.openai.com";
  std::string path = "/v1/chat/completions";
  std::string api_key_env = "GSC_API_KEY";
  int timeout_seconds = 120;
};

class HttpTransport : public Transport {
 public:
  explicit HttpTransport(EndpointConfig config) : config_(std::move(config)) {
    if (const char* key = std::getenv(config_.api_key_env.c_str())) api_key_ = key;
  }

  static nlohmann::json request_body(const CompletionRequest& r) {
    nlohmann::json body{{"model", r.model},
                        {"messages", {{{"role", "user"}, {"content", r.prompt}}}},
                        {"temperature", r.temperature},
                        {"max_tokens", r.max_tokens}};
    if (r.top_logprobs > 0) {
      body["logprobs"] = true;
      body["top_logprobs"] = r.top_logprobs;
    }
    return body;
  }

  static CompletionResponse parse_response(const std::string& body) {
    try {
      const auto j = nlohmann::json::parse(body);
      const auto& choice = j.at("choices").at(0);
      CompletionResponse out;
      const auto& content = choice.at("message").at("content");
      if (content.is_string()) out.text = content.get<std::string>();
      if (choice.contains("logprobs") && choice["logprobs"].is_object() &&
          choice["logprobs"].contains("content") && !choice["logprobs"]["content"].empty()) {
        for (const auto& t : choice["logprobs"]["content"].at(0).at("top_logprobs")) {
          out.top_logprobs.push_back({t.at("token").get<std::string>(),
                                      t.at("logprob").get<double>()});
        }
      }
      return out;
    } catch (const nlohmann::json::exception& e) {
      throw TransportError(std::string("malformed completion response: ") + e.what());
    }
  }

  CompletionResponse complete(const CompletionRequest& request) override {
    httplib::Client client(config_.base_url);
    client.set_read_timeout(config_.timeout_seconds, 0);
    client.set_connection_timeout(config_.timeout_seconds, 0);
    httplib::Headers headers;
    if (!api_key_.empty()) headers.emplace("Authorization", "Bearer " + api_key_);
    auto res = client.Post(config_.path, headers, request_body(request).dump(),
                           "application/json");
    if (!res) {
      throw TransportError("request to " + config_.base_url + config_.path +
                           " failed: " + httplib::to_string(res.error()));
    }
    if (res->status < 200 || res->status >= 300) {
      throw TransportError("endpoint returned HTTP " + std::to_string(res->status) + ": " +
                           res->body.substr(0, 200));
    }
    return parse_response(res->body);
  }

 private:
  EndpointConfig config_;
  std::string api_key_;
};

}  // namespace gsc::llm

#endif  // GSC_LLM_HTTP_TRANSPORT_HPP_
