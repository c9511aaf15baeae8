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

// Confusion matrices of predicted against reported ratings. Row a is the
// actual rating; rows sum to one unless no pair had that actual rating.

#ifndef GSC_LLM_CONFUSION_HPP_
#define GSC_LLM_CONFUSION_HPP_

#include <algorithm>
#include <array>
#include <cmath>
#include <span>

#include "gsc/llm/types.hpp"

namespace gsc::llm {

struct ConfusionMatrix {
  std::array<std::array<double, kRatingLevels>, kRatingLevels> cell{};
  std::array<std::size_t, kRatingLevels> row_count{};
  std::array<bool, kRatingLevels> empty_row{};
};

namespace detail {

inline void check_pairs(std::size_t predicted, std::span<const int> actual) {
  if (predicted != actual.size()) {
    throw PreconditionError("confusion matrix: " + std::to_string(predicted) +
                            " predictions but " + std::to_string(actual.size()) + " ratings");
  }
  for (int a : actual) {
    if (!is_rating(a)) throw ValidationError("actual rating " + std::to_string(a) + " outside 0-4");
  }
}

inline void normalize_rows(ConfusionMatrix& m) {
  for (std::size_t a = 0; a < kRatingLevels; ++a) {
    m.empty_row[a] = m.row_count[a] == 0;
    if (m.empty_row[a]) continue;
    for (double& c : m.cell[a]) c /= static_cast<double>(m.row_count[a]);
  }
}

}  // namespace detail

// Row a averages the predicted distributions of the pairs with actual rating a.
inline ConfusionMatrix confusion_matrix(std::span<const RatingDistribution> predicted,
                                        std::span<const int> actual) {
  detail::check_pairs(predicted.size(), actual);
  ConfusionMatrix m;
  for (std::size_t q = 0; q < actual.size(); ++q) {
    const auto a = static_cast<std::size_t>(actual[q]);
    ++m.row_count[a];
    for (std::size_t r = 0; r < kRatingLevels; ++r) m.cell[a][r] += predicted[q].p[r];
  }
  detail::normalize_rows(m);
  return m;
}

// Row a histograms the expectations of the pairs with actual rating a, in
// unit-width bins centred on 0..4 (half-points round up).
inline ConfusionMatrix confusion_matrix(std::span<const double> expected,
                                        std::span<const int> actual) {
  detail::check_pairs(expected.size(), actual);
  ConfusionMatrix m;
  for (std::size_t q = 0; q < actual.size(); ++q) {
    const auto a = static_cast<std::size_t>(actual[q]);
    ++m.row_count[a];
    const double bin = std::clamp(std::floor(expected[q] + 0.5), 0.0, 4.0);
    m.cell[a][static_cast<std::size_t>(bin)] += 1.0;
  }
  detail::normalize_rows(m);
  return m;
}

}  // namespace gsc::llm

#endif  // GSC_LLM_CONFUSION_HPP_
