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

// Prompt templates are plain-text assets with `$name` / `${name}` slots
// (`$$` is a literal dollar sign). Rendering helpers produce the Python-style
// dict literals the templates expect.

#ifndef GSC_LLM_PROMPTS_HPP_
#define GSC_LLM_PROMPTS_HPP_

#include <cctype>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "gsc/llm/types.hpp"

namespace gsc::llm {

class PromptTemplate {
 public:
  PromptTemplate() = default;
  explicit PromptTemplate(std::string text) : text_(std::move(text)) {}

  const std::string& text() const { return text_; }

  std::string render(const std::map<std::string, std::string>& values) const {
    std::string out;
    out.reserve(text_.size());
    for (std::size_t i = 0; i < text_.size(); ++i) {
      if (text_[i] != '$') {
        out += text_[i];
        continue;
      }
      if (i + 1 < text_.size() && text_[i + 1] == '$') {
        out += '$';
        ++i;
        continue;
      }
      std::string name;
      std::size_t j = i + 1;
      if (j < text_.size() && text_[j] == '{') {
        const auto close = text_.find('}', j);
        if (close == std::string::npos) throw Error("prompt template: unterminated ${");
        name = text_.substr(j + 1, close - j - 1);
        j = close + 1;
      } else {
        while (j < text_.size() &&
               (std::isalnum(static_cast<unsigned char>(text_[j])) || text_[j] == '_')) {
          name += text_[j++];
        }
      }
      if (name.empty()) {
        out += '$';
        continue;
      }
      const auto it = values.find(name);
      if (it == values.end()) throw Error("prompt template: no value for slot $" + name);
      out += it->second;
      i = j - 1;
    }
    return out;
  }

 private:
  std::string text_;
};

struct PromptLibrary {
  PromptTemplate approval;         // $opinion_dict, $train_qa_test_q_with_key_str
  PromptTemplate rating_question;  // $statement
  PromptTemplate generation;       // $user_opinions
  PromptTemplate summarize;        // $opinion_dict
};

inline std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot read prompt asset '" + path.string() + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline PromptLibrary load_prompt_library(const std::filesystem::path& dir) {
  auto load = [&](const char* file) {
    std::string text = read_text_file(dir / file);
    while (!text.empty() && (text.back() == '\n' || text.back() == '\r')) text.pop_back();
    return PromptTemplate(std::move(text));
  };
  return {load("approval_query.txt"), load("rating_question.txt"), load("generation.txt"),
          load("summarize.txt")};
}

// Python repr of a str: single-quoted with backslash escapes.
inline std::string py_repr(const std::string& s) {
  std::string out = "'";
  for (char c : s) {
    switch (c) {
      case '\\': out += "\\\\"; break;
      case '\'': out += "\\'"; break;
      case '\n': out += "\\n"; break;
      case '\r': out += "\\r"; break;
      case '\t': out += "\\t"; break;
      default: out += c;
    }
  }
  return out + "'";
}

inline std::string opinion_dict(const ParticipantRecord& p, bool use_summary) {
  if (use_summary && p.summary) return "{" + py_repr("summary") + ": " + py_repr(*p.summary) + "}";
  std::string out = "{";
  for (std::size_t q = 0; q < p.freeform.size(); ++q) {
    if (q) out += ", ";
    out += py_repr(p.freeform[q].first) + ": " + py_repr(p.freeform[q].second);
  }
  return out + "}";
}

inline std::string choices_prefix() {
  std::string out = "{'choices': [";
  for (std::size_t r = 0; r < kRatingLevels; ++r) {
    if (r) out += ", ";
    out += py_repr(kRatingLabels[r]);
  }
  out += "], 'choice_numbers': [0, 1, 2, 3, 4], 'choice_number':";
  return out;
}

// The participant's rated statements with their answers, followed by the
// query statement whose 'choice_number' is left open for the model.
inline std::string rating_responses(const PromptLibrary& lib, const ParticipantRecord& p,
                                    const std::string& query_statement) {
  std::string out = "{";
  for (const auto& rs : p.rated) {
    out += py_repr(lib.rating_question.render({{"statement", rs.statement}})) + ": " +
           choices_prefix() + " " + std::to_string(rs.rating) +
           ", 'choice': " + py_repr(kRatingLabels.at(static_cast<std::size_t>(rs.rating))) +
           ", 'explanation': " + py_repr(rs.explanation) + "}, ";
  }
  out += py_repr(lib.rating_question.render({{"statement", query_statement}})) + ": " +
         choices_prefix();
  return out;
}

inline std::string render_approval_prompt(const PromptLibrary& lib, const ParticipantRecord& p,
                                          const std::string& statement, bool use_summary) {
  return lib.approval.render({{"opinion_dict", opinion_dict(p, use_summary)},
                              {"train_qa_test_q_with_key_str",
                               rating_responses(lib, p, statement)}});
}

inline std::string render_generation_prompt(const PromptLibrary& lib,
                                            const std::vector<const ParticipantRecord*>& group,
                                            bool use_summary) {
  std::string users;
  for (const auto* p : group) {
    users += "User " + p->id + ": " + opinion_dict(*p, use_summary) + "\n";
  }
  return lib.generation.render({{"user_opinions", users}});
}

// Crude size estimate (about four characters per token).
inline std::size_t estimate_tokens(const std::string& s) { return (s.size() + 3) / 4; }

}  // namespace gsc::llm

#endif  // GSC_LLM_PROMPTS_HPP_
