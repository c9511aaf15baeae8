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

// Balanced assignment of participants to slate statements maximising the
// total rating, plus the summaries reported about such an assignment.

#ifndef GSC_LLM_ASSIGNMENT_HPP_
#define GSC_LLM_ASSIGNMENT_HPP_

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <vector>

#include "gsc/core.hpp"
#include "gsc/llm/types.hpp"

namespace gsc::llm {

// Row-major n x k matrix of ratings.
class RatingMatrix {
 public:
  RatingMatrix(std::size_t n, std::size_t k, std::vector<double> values)
      : n_(n), k_(k), values_(std::move(values)) {
    if (values_.size() != n_ * k_) {
      throw InvalidInstanceError("rating matrix needs n*k = " + std::to_string(n_ * k_) +
                                 " entries, got " + std::to_string(values_.size()));
    }
    for (double v : values_) {
      if (!std::isfinite(v)) throw InvalidInstanceError("rating matrix entries must be finite");
    }
  }
  std::size_t n() const { return n_; }
  std::size_t k() const { return k_; }
  double at(std::size_t i, std::size_t s) const { return values_[i * k_ + s]; }

 private:
  std::size_t n_, k_;
  std::vector<double> values_;
};

namespace detail {

// Minimum-cost assignment of every row to a distinct column (rows <= cols),
// shortest augmenting paths with potentials. Returns the column of each row.
inline std::vector<std::size_t> min_cost_assignment(const std::vector<std::vector<double>>& cost) {
  const std::size_t rows = cost.size();
  const std::size_t cols = rows ? cost[0].size() : 0;
  if (rows > cols) throw PreconditionError("assignment needs at least as many columns as rows");
  constexpr double kInf = std::numeric_limits<double>::infinity();
  // 1-based arrays; column 0 is the virtual root of each augmenting search.
  std::vector<double> row_pot(rows + 1, 0.0), col_pot(cols + 1, 0.0);
  std::vector<std::size_t> row_of(cols + 1, 0), prev(cols + 1, 0);
  for (std::size_t i = 1; i <= rows; ++i) {
    row_of[0] = i;
    std::size_t j0 = 0;
    std::vector<double> min_to(cols + 1, kInf);
    std::vector<bool> used(cols + 1, false);
    do {
      used[j0] = true;
      const std::size_t i0 = row_of[j0];
      double delta = kInf;
      std::size_t j1 = 0;
      for (std::size_t j = 1; j <= cols; ++j) {
        if (used[j]) continue;
        const double reduced = cost[i0 - 1][j - 1] - row_pot[i0] - col_pot[j];
        if (reduced < min_to[j]) {
          min_to[j] = reduced;
          prev[j] = j0;
        }
        if (min_to[j] < delta) {
          delta = min_to[j];
          j1 = j;
        }
      }
      for (std::size_t j = 0; j <= cols; ++j) {
        if (used[j]) {
          row_pot[row_of[j]] += delta;
          col_pot[j] -= delta;
        } else {
          min_to[j] -= delta;
        }
      }
      j0 = j1;
    } while (row_of[j0] != 0);
    do {
      const std::size_t j1 = prev[j0];
      row_of[j0] = row_of[j1];
      j0 = j1;
    } while (j0 != 0);
  }
  std::vector<std::size_t> col_of(rows);
  for (std::size_t j = 1; j <= cols; ++j) {
    if (row_of[j] != 0) col_of[row_of[j] - 1] = j - 1;
  }
  return col_of;
}

}  // namespace detail

struct AssignmentResult {
  BalancedMatching matching;
  double total = 0.0;
};

// Each statement gets floor(n/k) mandatory slots and, when k does not divide
// n, one optional slot. Mandatory slots carry a bonus larger than any
// achievable rating difference, so an optimal assignment fills them all and
// the n mod k remaining agents land on distinct optional slots.
inline AssignmentResult balanced_assignment(const RatingMatrix& ratings) {
  const std::size_t n = ratings.n(), k = ratings.k();
  if (k == 0 || k > n) throw InvalidInstanceError("balanced assignment needs 1 <= k <= n");
  const std::size_t base = n / k;
  const bool optional = n % k != 0;
  double lo = ratings.at(0, 0), hi = lo;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t s = 0; s < k; ++s) {
      lo = std::min(lo, ratings.at(i, s));
      hi = std::max(hi, ratings.at(i, s));
    }
  }
  const double bonus = static_cast<double>(n) * (hi - lo) + 1.0;

  std::vector<std::size_t> slot_statement;
  std::vector<bool> slot_mandatory;
  for (std::size_t s = 0; s < k; ++s) {
    for (std::size_t c = 0; c < base; ++c) {
      slot_statement.push_back(s);
      slot_mandatory.push_back(true);
    }
    if (optional) {
      slot_statement.push_back(s);
      slot_mandatory.push_back(false);
    }
  }
  std::vector<std::vector<double>> cost(n, std::vector<double>(slot_statement.size()));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t c = 0; c < slot_statement.size(); ++c) {
      cost[i][c] = -(ratings.at(i, slot_statement[c]) - lo + (slot_mandatory[c] ? bonus : 0.0));
    }
  }
  const auto col_of = detail::min_cost_assignment(cost);
  AssignmentResult out;
  out.matching.slot_of.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    out.matching.slot_of[i] = slot_statement[col_of[i]];
    out.total += ratings.at(i, out.matching.slot_of[i]);
  }
  return out;
}

inline double assignment_total(const RatingMatrix& ratings, const BalancedMatching& m) {
  double total = 0.0;
  for (std::size_t i = 0; i < ratings.n(); ++i) total += ratings.at(i, m.slot_of.at(i));
  return total;
}

// Fraction of agents whose assigned rating falls in each level; ratings are
// rounded half up and clamped to 0..4.
inline std::array<double, kRatingLevels> assigned_level_fractions(const RatingMatrix& ratings,
                                                                  const BalancedMatching& m) {
  std::array<double, kRatingLevels> frac{};
  for (std::size_t i = 0; i < ratings.n(); ++i) {
    const double v = std::floor(ratings.at(i, m.slot_of.at(i)) + 0.5);
    frac[static_cast<std::size_t>(std::clamp(v, 0.0, 4.0))] += 1.0;
  }
  for (double& f : frac) f /= static_cast<double>(ratings.n());
  return frac;
}

// Agents who rate some slate statement strictly above their assigned one.
inline std::size_t envious_agents(const RatingMatrix& ratings, const BalancedMatching& m) {
  std::size_t count = 0;
  for (std::size_t i = 0; i < ratings.n(); ++i) {
    const double own = ratings.at(i, m.slot_of.at(i));
    for (std::size_t s = 0; s < ratings.k(); ++s) {
      if (ratings.at(i, s) > own) {
        ++count;
        break;
      }
    }
  }
  return count;
}

}  // namespace gsc::llm

#endif  // GSC_LLM_ASSIGNMENT_HPP_
