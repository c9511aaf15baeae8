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

#ifndef GSC_LLM_TYPES_HPP_
#define GSC_LLM_TYPES_HPP_

#include <array>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "gsc/core.hpp"

namespace gsc::llm {

struct UnparseableResponseError : Error {
  using Error::Error;
};
struct TransportError : Error {
  using Error::Error;
};
struct IngestionError : Error {
  using Error::Error;
};
struct ValidationError : Error {
  using Error::Error;
};

inline constexpr std::size_t kRatingLevels = 5;
inline constexpr std::array<const char*, kRatingLevels> kRatingLabels = {
    "not at all", "poorly", "somewhat", "mostly", "perfectly"};

inline bool is_rating(int r) { return r >= 0 && r < static_cast<int>(kRatingLevels); }

struct RatedStatement {
  std::string statement;
  int rating = 0;
  std::string explanation;
};

struct ParticipantRecord {
  std::string id;
  std::vector<std::pair<std::string, std::string>> freeform;  // question -> answer
  std::vector<RatedStatement> rated;
  std::optional<std::string> summary;  // condensed free-form responses

  // Free-form answers joined into one opinion text.
  std::string opinion_text() const {
    std::string out;
    for (const auto& [q, a] : freeform) {
      if (!out.empty()) out += "\n\n";
      out += a;
    }
    return out;
  }
};

// Predicted probabilities over rating levels 0..4.
struct RatingDistribution {
  std::array<double, kRatingLevels> p{};

  double expectation() const {
    double e = 0.0;
    for (std::size_t r = 0; r < kRatingLevels; ++r) e += static_cast<double>(r) * p[r];
    return e;
  }

  // Renormalises the masses of the digits that were observed.
  static RatingDistribution from_masses(const std::array<double, kRatingLevels>& mass) {
    double total = 0.0;
    for (double m : mass) total += m;
    if (!(total > 0.0)) {
      throw UnparseableResponseError("no probability mass on any rating digit 0-4");
    }
    RatingDistribution d;
    for (std::size_t r = 0; r < kRatingLevels; ++r) d.p[r] = mass[r] / total;
    return d;
  }

  static RatingDistribution point_mass(int rating) {
    RatingDistribution d;
    d.p.at(static_cast<std::size_t>(rating)) = 1.0;
    return d;
  }
};

}  // namespace gsc::llm

#endif  // GSC_LLM_TYPES_HPP_
