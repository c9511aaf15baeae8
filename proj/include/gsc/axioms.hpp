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

// Verifiers for balanced justified representation (BJR) and its unbalanced
// relaxation (JR).
//
// A violation is a coalition S with k|S| >= n, a statement a and a threshold
// t such that every member has u_i(a) >= t while being represented below t:
// by its matched slot (BJR) or by its best slate member (JR).
//
// Thresholds are only tried at the distinct utility values of a; any other
// violating threshold can be raised to the next such value without shrinking
// the coalition. In box spaces the universe contains every axis-aligned box,
// so the bounding box of all under-represented agents at t = 1 witnesses a
// violation whenever one exists.

#ifndef GSC_AXIOMS_HPP_
#define GSC_AXIOMS_HPP_

#include <functional>
#include <optional>
#include <set>
#include <string>
#include <variant>
#include <vector>

#include "gsc/core.hpp"

namespace gsc {

struct Violation {
  std::vector<AgentId> coalition;  // ascending
  // A materialised statement, or a box of the (implicit) box universe.
  std::variant<StatementRef, Box> statement;
  double theta = 0.0;

  std::string statement_label(const Instance& instance) const {
    if (const auto* s = std::get_if<StatementRef>(&statement)) {
      return instance.statement(*s).id;
    }
    return "bounding-box";
  }
};

struct AxiomOptions {
  // Set-valued slates: the deviating statement must lie outside the slate.
  bool set_variant = false;
  // Agent count above which check_bjr refuses to enumerate matchings.
  std::size_t matching_search_cap = 10;
};

namespace detail {

inline std::vector<double> distinct_values(std::span<const double> col) {
  std::vector<double> v(col.begin(), col.end());
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
  return v;
}

inline double box_utility(const Instance& instance, const Box& box, AgentId i) {
  return box.contains(instance.points()->point(i)) ? 1.0 : 0.0;
}

// A strictly larger box covering the same agents: grow by half the L-inf gap
// to the nearest agent outside.
inline Box enlarge_without_new_points(const Instance& instance, Box box) {
  const PointSet& pts = *instance.points();
  double gap = std::numeric_limits<double>::infinity();
  for (AgentId i = 0; i < instance.n(); ++i) {
    const auto p = pts.point(i);
    double d = 0.0;
    for (std::size_t c = 0; c < pts.dims(); ++c) {
      d = std::max({d, box.lo[c] - p[c], p[c] - box.hi[c]});
    }
    if (d > 0.0) gap = std::min(gap, d);
  }
  const double margin = std::isfinite(gap) ? gap / 2.0 : 1.0;
  for (std::size_t c = 0; c < box.dims(); ++c) {
    box.lo[c] -= margin;
    box.hi[c] += margin;
  }
  return box;
}

// Shared scan: `represented(i)` is agent i's representation level.
inline std::optional<Violation> scan_for_violation(
    const Instance& instance, const Slate& slate, const AxiomOptions& options,
    const std::function<double(AgentId)>& represented) {
  const std::size_t n = instance.n();
  const std::size_t k = instance.k();
  std::vector<double> level(n);
  for (AgentId i = 0; i < n; ++i) level[i] = represented(i);

  const std::set<StatementRef> on_slate(slate.members.begin(), slate.members.end());
  for (StatementRef a = 0; a < instance.num_statements(); ++a) {
    if (options.set_variant && on_slate.contains(a)) continue;
    const auto col = instance.column(a);
    for (double theta : distinct_values(col)) {
      std::vector<AgentId> coalition;
      for (AgentId i = 0; i < n; ++i) {
        if (col[i] >= theta && level[i] < theta) coalition.push_back(i);
      }
      if (deserves_representation(coalition.size(), n, k)) {
        return Violation{std::move(coalition), a, theta};
      }
    }
  }

  if (instance.is_box_space()) {
    // Binary utilities: only t = 1 can be violated, and the bounding box of
    // every agent below 1 contains all of them.
    std::vector<AgentId> coalition;
    for (AgentId i = 0; i < n; ++i) {
      if (level[i] < 1.0) coalition.push_back(i);
    }
    if (!coalition.empty() && deserves_representation(coalition.size(), n, k)) {
      Box box = instance.points()->bounding_box(coalition);
      if (options.set_variant) {
        bool on_slate_box = false;
        for (StatementRef s : on_slate) {
          const auto& b = instance.statement(s).box;
          on_slate_box |= b && *b == box;
        }
        if (on_slate_box) box = enlarge_without_new_points(instance, std::move(box));
      }
      return Violation{std::move(coalition), std::move(box), 1.0};
    }
  }
  return std::nullopt;
}

inline void check_slate(const Instance& instance, const Slate& slate) {
  if (slate.size() != instance.k()) {
    throw PreconditionError("slate has " + std::to_string(slate.size()) +
                            " members, expected k = " + std::to_string(instance.k()));
  }
  for (StatementRef s : slate.members) (void)instance.statement(s);
}

}  // namespace detail

// BJR check for a given balanced matching.
inline std::optional<Violation> find_bjr_violation(const Instance& instance,
                                                   const Slate& slate,
                                                   const BalancedMatching& matching,
                                                   const AxiomOptions& options = {}) {
  detail::check_slate(instance, slate);
  if (!is_balanced(matching, instance.n(), instance.k())) {
    throw PreconditionError("find_bjr_violation: matching is not balanced");
  }
  return detail::scan_for_violation(instance, slate, options, [&](AgentId i) {
    return instance.utility(i, slate[matching[i]]);
  });
}

// JR check: each agent is represented by its best slate member.
inline std::optional<Violation> check_jr(const Instance& instance, const Slate& slate,
                                         const AxiomOptions& options = {}) {
  detail::check_slate(instance, slate);
  return detail::scan_for_violation(instance, slate, options, [&](AgentId i) {
    double best = -std::numeric_limits<double>::infinity();
    for (StatementRef s : slate.members) best = std::max(best, instance.utility(i, s));
    return best;
  });
}

// Re-checks a violation's defining conditions from raw utilities.
inline bool is_valid_violation(const Instance& instance, const Slate& slate,
                               const Violation& v,
                               const std::optional<BalancedMatching>& matching) {
  if (!deserves_representation(v.coalition.size(), instance.n(), instance.k())) {
    return false;
  }
  for (AgentId i : v.coalition) {
    const double u = std::holds_alternative<Box>(v.statement)
                         ? detail::box_utility(instance, std::get<Box>(v.statement), i)
                         : instance.utility(i, std::get<StatementRef>(v.statement));
    if (u < v.theta) return false;
    if (matching) {
      if (instance.utility(i, slate[(*matching)[i]]) >= v.theta) return false;
    } else {
      for (StatementRef s : slate.members) {
        if (instance.utility(i, s) >= v.theta) return false;
      }
    }
  }
  return true;
}

struct BjrVerdict {
  enum class Kind { kSatisfied, kViolated, kUndecided };
  Kind kind = Kind::kUndecided;
  std::optional<BalancedMatching> matching;  // witness, or last matching tried
  std::optional<Violation> violation;
  std::size_t matchings_tried = 0;
  std::string reason;

  bool satisfied() const { return kind == Kind::kSatisfied; }
  bool violated() const { return kind == Kind::kViolated; }
};

inline const char* to_string(BjrVerdict::Kind kind) {
  switch (kind) {
    case BjrVerdict::Kind::kSatisfied:
      return "satisfied";
    case BjrVerdict::Kind::kViolated:
      return "violated";
    case BjrVerdict::Kind::kUndecided:
      return "undecided";
  }
  return "undecided";
}

// Calls `visit` on every balanced matching (agents assigned in index order,
// slots tried in ascending order). Stops early when `visit` returns false.
inline void for_each_balanced_matching(
    std::size_t n, std::size_t k,
    const std::function<bool(const BalancedMatching&)>& visit) {
  const std::size_t lo = n / k;
  const std::size_t hi = (n + k - 1) / k;
  const std::size_t big_slots = n - k * lo;  // slots that must reach hi
  BalancedMatching m;
  m.slot_of.assign(n, 0);
  std::vector<std::size_t> load(k, 0);
  std::size_t at_hi = 0;
  bool stop = false;

  std::function<void(AgentId)> rec = [&](AgentId i) {
    if (stop) return;
    if (i == n) {
      if (!visit(m)) stop = true;
      return;
    }
    for (std::size_t slot = 0; slot < k && !stop; ++slot) {
      if (load[slot] >= hi) continue;
      const bool reaches_hi = hi != lo && load[slot] + 1 == hi;
      if (reaches_hi && at_hi == big_slots) continue;
      // Remaining agents must still be able to fill every slot to lo.
      ++load[slot];
      at_hi += reaches_hi;
      std::size_t deficit = 0;
      for (std::size_t s = 0; s < k; ++s) deficit += load[s] < lo ? lo - load[s] : 0;
      if (deficit <= n - (i + 1)) {
        m.slot_of[i] = slot;
        rec(i + 1);
      }
      at_hi -= reaches_hi;
      --load[slot];
    }
  };
  rec(0);
}

// BJR decision: with a matching, delegates to find_bjr_violation; without
// one, searches all balanced matchings (n <= options.matching_search_cap).
inline BjrVerdict check_bjr(const Instance& instance, const Slate& slate,
                            const std::optional<BalancedMatching>& matching = std::nullopt,
                            const AxiomOptions& options = {}) {
  BjrVerdict verdict;
  if (matching) {
    verdict.matching = matching;
    verdict.matchings_tried = 1;
    verdict.violation = find_bjr_violation(instance, slate, *matching, options);
    verdict.kind = verdict.violation ? BjrVerdict::Kind::kViolated
                                     : BjrVerdict::Kind::kSatisfied;
    return verdict;
  }
  detail::check_slate(instance, slate);
  if (instance.n() > options.matching_search_cap) {
    verdict.kind = BjrVerdict::Kind::kUndecided;
    verdict.reason = "matching search needs n <= " +
                     std::to_string(options.matching_search_cap) + ", got n = " +
                     std::to_string(instance.n()) + "; supply a matching";
    return verdict;
  }
  verdict.kind = BjrVerdict::Kind::kViolated;
  for_each_balanced_matching(instance.n(), instance.k(), [&](const BalancedMatching& m) {
    ++verdict.matchings_tried;
    verdict.matching = m;
    verdict.violation = find_bjr_violation(instance, slate, m, options);
    if (!verdict.violation) {
      verdict.kind = BjrVerdict::Kind::kSatisfied;
      return false;
    }
    return true;
  });
  return verdict;
}

}  // namespace gsc

#endif  // GSC_AXIOMS_HPP_
