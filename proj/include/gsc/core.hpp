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

#ifndef GSC_CORE_HPP_
#define GSC_CORE_HPP_

#include <algorithm>
#include <cmath>
#include <compare>
#include <cstddef>
#include <functional>
#include <limits>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <unordered_set>
#include <utility>
#include <vector>

namespace gsc {

using AgentId = std::size_t;
using StatementRef = std::size_t;

// Error hierarchy. Every failure the library reports derives from Error.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct OutOfRangeError : Error {
  using Error::Error;
};
struct InvalidInstanceError : Error {
  using Error::Error;
};
struct MalformedMatchingError : Error {
  using Error::Error;
};
struct LookupError : Error {
  using Error::Error;
};
struct PreconditionError : Error {
  using Error::Error;
};

// A real number or +infinity. rth_largest(X, 0) is +infinity by convention,
// which compares greater than any stored utility.
class ExtendedReal {
 public:
  constexpr ExtendedReal(double value) : value_(value) {}  // NOLINT

  static constexpr ExtendedReal infinity() {
    ExtendedReal r(0.0);
    r.infinite_ = true;
    return r;
  }

  constexpr bool is_infinite() const { return infinite_; }
  constexpr double value() const {
    return infinite_ ? std::numeric_limits<double>::infinity() : value_;
  }

  friend constexpr std::partial_ordering operator<=>(const ExtendedReal& a,
                                                     const ExtendedReal& b) {
    if (a.infinite_ || b.infinite_) {
      return a.infinite_ == b.infinite_ ? std::partial_ordering::equivalent
             : a.infinite_              ? std::partial_ordering::greater
                                        : std::partial_ordering::less;
    }
    return a.value_ <=> b.value_;
  }
  friend constexpr bool operator==(const ExtendedReal& a,
                                   const ExtendedReal& b) {
    return (a <=> b) == std::partial_ordering::equivalent;
  }

 private:
  double value_ = 0.0;
  bool infinite_ = false;
};

// r-th largest element of a multiset (1-based, counting multiplicity).
inline ExtendedReal rth_largest(std::span<const double> values, std::size_t r) {
  if (r == 0) return ExtendedReal::infinity();
  if (r > values.size()) {
    throw OutOfRangeError("rth_largest: r = " + std::to_string(r) +
                          " exceeds multiset size " +
                          std::to_string(values.size()));
  }
  std::vector<double> scratch(values.begin(), values.end());
  auto nth = scratch.begin() + static_cast<std::ptrdiff_t>(r - 1);
  std::nth_element(scratch.begin(), nth, scratch.end(), std::greater<>());
  return *nth;
}

// Per-round group sizes for a balanced split of n agents into k groups:
// the first n mod k rounds take ceil(n/k), the rest floor(n/k).
inline std::vector<std::size_t> balance_quotas(std::size_t n, std::size_t k) {
  if (k == 0 || n == 0 || k > n) {
    throw InvalidInstanceError("balance_quotas: need 1 <= k <= n (n = " +
                               std::to_string(n) +
                               ", k = " + std::to_string(k) + ")");
  }
  const std::size_t floor_q = n / k;
  const std::size_t big_rounds = n - k * floor_q;
  std::vector<std::size_t> quotas(k, floor_q);
  for (std::size_t j = 0; j < big_rounds; ++j) quotas[j] = floor_q + 1;
  return quotas;
}

// k * |S| >= n, i.e. |S| >= n/k without division.
constexpr bool deserves_representation(std::size_t coalition_size,
                                       std::size_t n, std::size_t k) {
  return k * coalition_size >= n;
}

// Axis-aligned box: one closed interval per dimension.
struct Box {
  std::vector<double> lo;
  std::vector<double> hi;

  std::size_t dims() const { return lo.size(); }

  bool contains(std::span<const double> point) const {
    for (std::size_t d = 0; d < lo.size(); ++d) {
      if (point[d] < lo[d] || point[d] > hi[d]) return false;
    }
    return true;
  }

  friend bool operator==(const Box&, const Box&) = default;
};

// Agent positions for structured box spaces; row i is agent i's point.
class PointSet {
 public:
  PointSet() = default;
  PointSet(std::size_t dims, std::vector<double> coords)
      : dims_(dims), coords_(std::move(coords)) {
    if (dims_ == 0) throw InvalidInstanceError("PointSet: dims must be >= 1");
    if (coords_.size() % dims_ != 0) {
      throw InvalidInstanceError("PointSet: coordinate count not a multiple of dims");
    }
    for (double c : coords_) {
      if (!std::isfinite(c)) throw InvalidInstanceError("PointSet: non-finite coordinate");
    }
  }

  std::size_t dims() const { return dims_; }
  std::size_t size() const { return dims_ == 0 ? 0 : coords_.size() / dims_; }
  std::span<const double> point(AgentId i) const {
    return {coords_.data() + i * dims_, dims_};
  }
  const std::vector<double>& coords() const { return coords_; }

  template <class Agents>
  Box bounding_box(const Agents& agents) const {
    Box box{std::vector<double>(dims_, std::numeric_limits<double>::infinity()),
            std::vector<double>(dims_, -std::numeric_limits<double>::infinity())};
    for (AgentId i : agents) {
      auto p = point(i);
      for (std::size_t d = 0; d < dims_; ++d) {
        box.lo[d] = std::min(box.lo[d], p[d]);
        box.hi[d] = std::max(box.hi[d], p[d]);
      }
    }
    return box;
  }

 private:
  std::size_t dims_ = 0;
  std::vector<double> coords_;
};

struct Statement {
  std::string id;
  std::optional<std::string> text;
  std::optional<Box> box;

  friend bool operator==(const Statement&, const Statement&) = default;
};

// Agents, a (materialised) statement universe, the utility matrix and the
// slate size. Utilities are stored per statement; serialisation is
// row-major over agents. When `points` is set the instance is a box space:
// the universe is every axis-aligned box, of which only the materialised
// ones appear as columns.
class Instance {
 public:
  Instance(std::size_t n, std::size_t k, std::vector<Statement> statements,
           std::vector<double> row_major_utilities,
           std::optional<PointSet> points = std::nullopt)
      : n_(n), k_(k), points_(std::move(points)) {
    if (n_ == 0) throw InvalidInstanceError("instance: n must be positive");
    if (k_ == 0 || k_ > n_) {
      throw InvalidInstanceError("instance: slate size k must satisfy 1 <= k <= n");
    }
    if (points_ && points_->size() != n_) {
      throw InvalidInstanceError("instance: point count differs from n");
    }
    const std::size_t m = statements.size();
    if (row_major_utilities.size() != n_ * m) {
      throw InvalidInstanceError("instance: utility matrix must be n x |U| (" +
                                 std::to_string(n_) + " x " + std::to_string(m) +
                                 "), got " +
                                 std::to_string(row_major_utilities.size()) +
                                 " entries");
    }
    columns_.assign(m, std::vector<double>(n_));
    for (std::size_t i = 0; i < n_; ++i) {
      for (std::size_t s = 0; s < m; ++s) {
        columns_[s][i] = row_major_utilities[i * m + s];
      }
    }
    for (auto& st : statements) push_checked(std::move(st));
    for (const auto& col : columns_) check_finite(col);
  }

  std::size_t n() const { return n_; }
  std::size_t k() const { return k_; }
  std::size_t num_statements() const { return statements_.size(); }
  bool is_box_space() const { return points_.has_value(); }
  const std::optional<PointSet>& points() const { return points_; }

  const Statement& statement(StatementRef s) const {
    if (s >= statements_.size()) {
      throw LookupError("unknown statement index " + std::to_string(s));
    }
    return statements_[s];
  }
  const std::vector<Statement>& statements() const { return statements_; }

  double utility(AgentId i, StatementRef s) const {
    if (i >= n_) throw LookupError("unknown agent index " + std::to_string(i));
    if (s >= columns_.size()) {
      throw LookupError("unknown statement index " + std::to_string(s));
    }
    return columns_[s][i];
  }
  std::span<const double> column(StatementRef s) const {
    if (s >= columns_.size()) {
      throw LookupError("unknown statement index " + std::to_string(s));
    }
    return columns_[s];
  }

  std::optional<StatementRef> find(const std::string& id) const {
    for (std::size_t s = 0; s < statements_.size(); ++s) {
      if (statements_[s].id == id) return s;
    }
    return std::nullopt;
  }

  std::vector<double> row_major_utilities() const {
    const std::size_t m = columns_.size();
    std::vector<double> out(n_ * m);
    for (std::size_t s = 0; s < m; ++s) {
      for (std::size_t i = 0; i < n_; ++i) out[i * m + s] = columns_[s][i];
    }
    return out;
  }

  // Materialises a statement with an explicit utility column.
  StatementRef add_statement(Statement statement, std::vector<double> column) {
    if (column.size() != n_) {
      throw InvalidInstanceError("add_statement: utility column must have n entries");
    }
    check_finite(column);
    columns_.push_back(std::move(column));
    try {
      push_checked(std::move(statement));
    } catch (...) {
      columns_.pop_back();
      throw;
    }
    return statements_.size() - 1;
  }

  // Materialises a box statement; utilities follow from point membership.
  StatementRef add_box(std::string id, Box box) {
    if (!points_) throw InvalidInstanceError("add_box: instance has no agent points");
    if (box.dims() != points_->dims() || box.hi.size() != box.dims()) {
      throw InvalidInstanceError("add_box: box dimension mismatch");
    }
    std::vector<double> column(n_);
    for (AgentId i = 0; i < n_; ++i) column[i] = box.contains(points_->point(i)) ? 1.0 : 0.0;
    return add_statement(Statement{std::move(id), std::nullopt, std::move(box)},
                         std::move(column));
  }

  friend bool operator==(const Instance& a, const Instance& b) {
    return a.n_ == b.n_ && a.k_ == b.k_ && a.statements_ == b.statements_ &&
           a.columns_ == b.columns_ &&
           a.points_.has_value() == b.points_.has_value() &&
           (!a.points_ || (a.points_->dims() == b.points_->dims() &&
                           a.points_->coords() == b.points_->coords()));
  }

 private:
  void push_checked(Statement statement) {
    if (!ids_.insert(statement.id).second) {
      throw InvalidInstanceError("instance: duplicate statement id '" + statement.id + "'");
    }
    statements_.push_back(std::move(statement));
  }
  static void check_finite(const std::vector<double>& col) {
    for (double u : col) {
      if (!std::isfinite(u)) throw InvalidInstanceError("instance: non-finite utility");
    }
  }

  std::size_t n_;
  std::size_t k_;
  std::vector<Statement> statements_;
  std::vector<std::vector<double>> columns_;
  std::unordered_set<std::string> ids_;
  std::optional<PointSet> points_;
};

// Multiset of k statements. Repeated references are allowed; positions
// ("slots") are what a matching assigns agents to.
struct Slate {
  std::vector<StatementRef> members;

  std::size_t size() const { return members.size(); }
  StatementRef operator[](std::size_t slot) const { return members[slot]; }
  friend bool operator==(const Slate&, const Slate&) = default;
};

// Agent -> slate slot.
struct BalancedMatching {
  std::vector<std::size_t> slot_of;

  std::size_t size() const { return slot_of.size(); }
  std::size_t operator[](AgentId i) const { return slot_of[i]; }
  friend bool operator==(const BalancedMatching&, const BalancedMatching&) = default;
};

inline std::vector<std::size_t> slot_loads(const BalancedMatching& matching,
                                           std::size_t n, std::size_t k) {
  if (matching.size() != n) {
    throw MalformedMatchingError("matching covers " + std::to_string(matching.size()) +
                                 " agents, expected " + std::to_string(n));
  }
  std::vector<std::size_t> loads(k, 0);
  for (AgentId i = 0; i < n; ++i) {
    if (matching[i] >= k) {
      throw MalformedMatchingError("agent " + std::to_string(i) +
                                   " matched to slot " + std::to_string(matching[i]) +
                                   " outside a slate of size " + std::to_string(k));
    }
    ++loads[matching[i]];
  }
  return loads;
}

// True iff every slot receives floor(n/k) or ceil(n/k) agents.
inline bool is_balanced(const BalancedMatching& matching, std::size_t n,
                        std::size_t k) {
  if (k == 0 || k > n) throw InvalidInstanceError("is_balanced: need 1 <= k <= n");
  const auto loads = slot_loads(matching, n, k);
  const std::size_t lo = n / k;
  const std::size_t hi = (n + k - 1) / k;
  return std::all_of(loads.begin(), loads.end(),
                     [&](std::size_t l) { return l == lo || l == hi; });
}

// Agents of `pool` sorted by decreasing utility for `statement`, ties by
// lower agent index; the first r are the round's removed set.
template <class UtilityFn>
std::vector<AgentId> top_agents(std::span<const AgentId> pool, std::size_t r,
                                UtilityFn&& utility) {
  std::vector<std::pair<double, AgentId>> scored;
  scored.reserve(pool.size());
  for (AgentId i : pool) scored.emplace_back(utility(i), i);
  std::sort(scored.begin(), scored.end(), [](const auto& a, const auto& b) {
    return a.first != b.first ? a.first > b.first : a.second < b.second;
  });
  std::vector<AgentId> out;
  out.reserve(std::min(r, scored.size()));
  for (std::size_t j = 0; j < r && j < scored.size(); ++j) out.push_back(scored[j].second);
  return out;
}

}  // namespace gsc

#endif  // GSC_CORE_HPP_
