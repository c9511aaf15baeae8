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

// Ingestion of survey data. The field names are pinned in
// docs/pilot_schema.md. A file is CSV (header row required) or JSON lines;
// a directory is every *.csv / *.jsonl file in it, in name order.

#ifndef GSC_LLM_PILOT_HPP_
#define GSC_LLM_PILOT_HPP_

#include <algorithm>
#include <charconv>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "gsc/llm/types.hpp"
#include "json.hpp"

namespace gsc::llm {

// RFC 4180 records: quoted fields may hold commas, doubled quotes and line
// breaks; CRLF and LF both end a record. Blank lines are skipped.
inline std::vector<std::vector<std::string>> parse_csv(const std::string& text) {
  std::vector<std::vector<std::string>> rows;
  std::vector<std::string> row;
  std::string field;
  bool quoted = false, field_started = false;
  auto end_field = [&] {
    row.push_back(std::move(field));
    field.clear();
    field_started = false;
  };
  auto end_row = [&] {
    end_field();
    if (!(row.size() == 1 && row[0].empty())) rows.push_back(std::move(row));
    row.clear();
  };
  for (std::size_t i = 0; i < text.size(); ++i) {
    const char c = text[i];
    if (quoted) {
      if (c == '"') {
        if (i + 1 < text.size() && text[i + 1] == '"') {
          field += '"';
          ++i;
        } else {
          quoted = false;
        }
      } else {
        field += c;
      }
      continue;
    }
    switch (c) {
      case '"':
        if (field_started && !field.empty()) {
          throw IngestionError("csv: stray quote inside an unquoted field");
        }
        quoted = field_started = true;
        break;
      case ',': end_field(); break;
      case '\r':
        if (i + 1 < text.size() && text[i + 1] == '\n') ++i;
        end_row();
        break;
      case '\n': end_row(); break;
      default:
        field += c;
        field_started = true;
    }
  }
  if (quoted) throw IngestionError("csv: unterminated quoted field");
  if (field_started || !field.empty() || !row.empty()) end_row();
  return rows;
}

enum class PilotRowKind { kFreeform, kRating, kValidation, kSlate };

struct PilotData {
  std::vector<ParticipantRecord> participants;  // in order of first appearance
  // participant id -> statement id -> rating
  std::map<std::string, std::map<std::string, int>> validation;
  // statement id -> text, for the slate statements named in validation rows
  std::map<std::string, std::string> slate;
};

namespace detail {

inline const std::vector<std::string>& required_fields(PilotRowKind kind) {
  static const std::vector<std::string> freeform{"participant_id", "question_key", "answer_text"};
  static const std::vector<std::string> rating{"participant_id", "statement_text", "rating",
                                               "explanation"};
  static const std::vector<std::string> validation{"participant_id", "statement_id", "rating"};
  static const std::vector<std::string> slate{"statement_id", "statement_text"};
  switch (kind) {
    case PilotRowKind::kFreeform: return freeform;
    case PilotRowKind::kRating: return rating;
    case PilotRowKind::kValidation: return validation;
    case PilotRowKind::kSlate: return slate;
  }
  return freeform;
}

// Row kind from the fields present: question_key marks free-form answers,
// participant_id with statement_text marks ratings, participant_id with
// statement_id marks validation ratings, and statement_id with
// statement_text alone marks slate statements.
inline PilotRowKind classify(const std::vector<std::string>& fields, const std::string& where) {
  auto has = [&](const char* f) { return std::find(fields.begin(), fields.end(), f) != fields.end(); };
  if (has("question_key")) return PilotRowKind::kFreeform;
  if (has("participant_id") && has("statement_text")) return PilotRowKind::kRating;
  if (has("participant_id")) return PilotRowKind::kValidation;
  if (has("statement_text")) return PilotRowKind::kSlate;
  throw IngestionError(where + ": unrecognised record; missing field 'participant_id'");
}

inline int parse_rating(const std::string& text, const std::string& where) {
  std::string t = text;
  t.erase(0, t.find_first_not_of(" \t"));
  t.erase(t.find_last_not_of(" \t") + 1);
  int v = 0;
  const auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
  if (t.empty() || ec != std::errc() || ptr != t.data() + t.size()) {
    throw IngestionError(where + ": field 'rating' is not an integer: '" + text + "'");
  }
  if (!is_rating(v)) {
    throw ValidationError(where + ": rating " + std::to_string(v) + " outside 0-4");
  }
  return v;
}

class PilotBuilder {
 public:
  void add(const std::map<std::string, std::string>& row, const std::string& where) {
    std::vector<std::string> names;
    for (const auto& [k, v] : row) names.push_back(k);
    const PilotRowKind kind = classify(names, where);
    for (const auto& f : required_fields(kind)) {
      if (!row.contains(f)) throw IngestionError(where + ": missing field '" + f + "'");
    }
    const auto& get = [&](const char* f) -> const std::string& { return row.at(f); };
    switch (kind) {
      case PilotRowKind::kFreeform:
        participant(get("participant_id"))
            .freeform.emplace_back(get("question_key"), get("answer_text"));
        break;
      case PilotRowKind::kRating: {
        const int rating = parse_rating(get("rating"), where);
        participant(get("participant_id"))
            .rated.push_back({get("statement_text"), rating, get("explanation")});
        break;
      }
      case PilotRowKind::kValidation:
        data_.validation[get("participant_id")][get("statement_id")] =
            parse_rating(get("rating"), where);
        break;
      case PilotRowKind::kSlate:
        data_.slate[get("statement_id")] = get("statement_text");
        break;
    }
  }

  PilotData finish() && { return std::move(data_); }

 private:
  ParticipantRecord& participant(const std::string& id) {
    if (id.empty()) throw IngestionError("empty field 'participant_id'");
    const auto it = index_.find(id);
    if (it != index_.end()) return data_.participants[it->second];
    index_.emplace(id, data_.participants.size());
    data_.participants.push_back({id, {}, {}, std::nullopt});
    return data_.participants.back();
  }

  PilotData data_;
  std::map<std::string, std::size_t> index_;
};

inline void ingest_csv(const std::string& text, const std::string& name, PilotBuilder& b) {
  const auto rows = parse_csv(text);
  if (rows.empty()) return;
  const auto& header = rows[0];
  for (std::size_t r = 1; r < rows.size(); ++r) {
    const std::string where = name + ":" + std::to_string(r + 1);
    if (rows[r].size() != header.size()) {
      throw IngestionError(where + ": expected " + std::to_string(header.size()) +
                           " fields, found " + std::to_string(rows[r].size()));
    }
    std::map<std::string, std::string> row;
    for (std::size_t c = 0; c < header.size(); ++c) row[header[c]] = rows[r][c];
    b.add(row, where);
  }
}

inline void ingest_jsonl(const std::string& text, const std::string& name, PilotBuilder& b) {
  std::istringstream in(text);
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    const std::string where = name + ":" + std::to_string(lineno);
    nlohmann::json j;
    try {
      j = nlohmann::json::parse(line);
    } catch (const nlohmann::json::parse_error& e) {
      throw IngestionError(where + ": not valid JSON (" + e.what() + ")");
    }
    if (!j.is_object()) throw IngestionError(where + ": record must be a JSON object");
    std::map<std::string, std::string> row;
    for (const auto& [key, value] : j.items()) {
      if (value.is_string()) {
        row[key] = value.get<std::string>();
      } else if (value.is_number_integer()) {
        row[key] = std::to_string(value.get<long long>());
      } else {
        throw IngestionError(where + ": field '" + key + "' must be a string or integer");
      }
    }
    b.add(row, where);
  }
}

inline void ingest_file(const std::filesystem::path& path, PilotBuilder& b) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IngestionError("cannot read '" + path.string() + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  const std::string ext = path.extension().string();
  if (ext == ".jsonl" || ext == ".json") {
    ingest_jsonl(ss.str(), path.string(), b);
  } else {
    ingest_csv(ss.str(), path.string(), b);
  }
}

}  // namespace detail

inline PilotData ingest_pilot_data(const std::filesystem::path& path) {
  detail::PilotBuilder builder;
  if (std::filesystem::is_directory(path)) {
    std::vector<std::filesystem::path> files;
    for (const auto& e : std::filesystem::directory_iterator(path)) {
      const auto ext = e.path().extension();
      if (e.is_regular_file() && (ext == ".csv" || ext == ".jsonl")) files.push_back(e.path());
    }
    std::sort(files.begin(), files.end());
    for (const auto& f : files) detail::ingest_file(f, builder);
  } else {
    detail::ingest_file(path, builder);
  }
  return std::move(builder).finish();
}

}  // namespace gsc::llm

#endif  // GSC_LLM_PILOT_HPP_
