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

// Query oracles. A democratic process sees the instance only through
//   disc(i, a)  -> u_i(a)
//   gen(S, r)   -> argmax_a  r-th largest { u_i(a) : i in S },  |S| <= t
// and every call is appended to the oracle's transcript.

#ifndef GSC_ORACLES_HPP_
#define GSC_ORACLES_HPP_

#include <concepts>
#include <limits>
#include <map>
#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <tuple>
#include <vector>

#include "gsc/core.hpp"

namespace gsc {

struct SizeLimitError : Error {
  using Error::Error;
};

enum class QueryKind { kDisc, kGen };

inline const char* to_string(QueryKind kind) {
  return kind == QueryKind::kDisc ? "disc" : "gen";
}

struct QueryRecord {
  QueryKind kind;
  std::size_t set_size;
  std::size_t r;
  StatementRef statement;
  std::string statement_id;
};

class Transcript {
 public:
  void push(QueryRecord record) { records_.push_back(std::move(record)); }
  const std::vector<QueryRecord>& records() const { return records_; }
  std::size_t size() const { return records_.size(); }

  std::size_t count(QueryKind kind) const {
    std::size_t c = 0;
    for (const auto& q : records_) c += q.kind == kind;
    return c;
  }
  std::size_t max_gen_set_size() const {
    std::size_t m = 0;
    for (const auto& q : records_) {
      if (q.kind == QueryKind::kGen) m = std::max(m, q.set_size);
    }
    return m;
  }
  std::vector<std::size_t> gen_set_sizes() const {
    std::vector<std::size_t> out;
    for (const auto& q : records_) {
      if (q.kind == QueryKind::kGen) out.push_back(q.set_size);
    }
    return out;
  }

  // query_index,kind,set_size,r,statement_id  (r is empty for disc rows)
  void write_csv(std::ostream& os) const {
    os << "query_index,kind,set_size,r,statement_id\n";
    for (std::size_t q = 0; q < records_.size(); ++q) {
      const auto& rec = records_[q];
      os << q << ',' << to_string(rec.kind) << ',' << rec.set_size << ',';
      if (rec.kind == QueryKind::kGen) os << rec.r;
      os << ',' << rec.statement_id << '\n';
    }
  }

 private:
  std::vector<QueryRecord> records_;
};

template <class O>
concept QueryOracle = requires(O& o, const O& co, AgentId i, StatementRef s,
                               std::span<const AgentId> agents, std::size_t r) {
  { o.disc(i, s) } -> std::convertible_to<double>;
  { o.gen(agents, r) } -> std::convertible_to<StatementRef>;
  { o.fallback_statement() } -> std::convertible_to<StatementRef>;
  { co.statement_id(s) } -> std::convertible_to<std::string>;
  { co.transcript() } -> std::convertible_to<const Transcript&>;
  { co.size_limit() } -> std::convertible_to<std::optional<std::size_t>>;
};

// Oracles that answer from a concrete (possibly growing) Instance.
template <class O>
concept InstanceOracle = QueryOracle<O> && requires(const O& co) {
  { co.instance() } -> std::convertible_to<const Instance&>;
};

// Shared bookkeeping: size limit, argument checks and the transcript.
class OracleBase {
 public:
  explicit OracleBase(Instance instance,
                      std::optional<std::size_t> size_limit = std::nullopt)
      : instance_(std::move(instance)), size_limit_(size_limit) {
    if (size_limit_ && *size_limit_ == 0) {
      throw PreconditionError("oracle size limit must be positive");
    }
  }

  const Instance& instance() const { return instance_; }
  const Transcript& transcript() const { return transcript_; }
  std::optional<std::size_t> size_limit() const { return size_limit_; }
  std::string statement_id(StatementRef s) const { return instance_.statement(s).id; }

  double disc(AgentId i, StatementRef s) {
    const double u = instance_.utility(i, s);
    transcript_.push({QueryKind::kDisc, 1, 0, s, instance_.statement(s).id});
    return u;
  }

  // Query objective r-th largest { u_i(s) : i in S }, without logging.
  ExtendedReal objective(std::span<const AgentId> agents, std::size_t r,
                         StatementRef s) const {
    const auto col = instance_.column(s);
    std::vector<double> vals;
    vals.reserve(agents.size());
    for (AgentId i : agents) vals.push_back(col[i]);
    return rth_largest(vals, r);
  }

 protected:
  void check_gen(std::span<const AgentId> agents, std::size_t r) const {
    if (agents.empty()) throw PreconditionError("gen: agent set must be nonempty");
    if (size_limit_ && agents.size() > *size_limit_) {
      throw SizeLimitError("gen: |S| = " + std::to_string(agents.size()) +
                           " exceeds size limit t = " + std::to_string(*size_limit_));
    }
    if (r > agents.size()) {
      throw OutOfRangeError("gen: r = " + std::to_string(r) + " exceeds |S| = " +
                            std::to_string(agents.size()));
    }
    for (AgentId i : agents) {
      if (i >= instance_.n()) throw LookupError("gen: unknown agent " + std::to_string(i));
    }
  }
  StatementRef log_gen(std::size_t set_size, std::size_t r, StatementRef s) {
    transcript_.push({QueryKind::kGen, set_size, r, s, instance_.statement(s).id});
    return s;
  }

  Instance instance_;
  std::optional<std::size_t> size_limit_;
  Transcript transcript_;
};

// Exact generative queries over a finite universe; ties go to the lowest
// statement index.
class ExactOracle : public OracleBase {
 public:
  explicit ExactOracle(Instance instance,
                       std::optional<std::size_t> size_limit = std::nullopt)
      : OracleBase(std::move(instance), size_limit) {
    if (instance_.num_statements() == 0) {
      throw InvalidInstanceError("exact oracle needs a nonempty statement universe");
    }
  }

  StatementRef gen(std::span<const AgentId> agents, std::size_t r) {
    check_gen(agents, r);
    StatementRef best = 0;
    ExtendedReal best_value = objective(agents, r, 0);
    for (StatementRef s = 1; s < instance_.num_statements(); ++s) {
      const ExtendedReal v = objective(agents, r, s);
      if (v > best_value) {
        best = s;
        best_value = v;
      }
    }
    return log_gen(agents.size(), r, best);
  }

  StatementRef fallback_statement() const { return 0; }
};

// Overshadowing construction parameters.
//   support_size: unpopular statements approve at most this many agents.
//   pad_support:  unpopular statements approve exactly support_size agents
//                 (the queried ones first, then the lowest-index others).
struct AdversarialRules {
  std::size_t size_limit;
  std::size_t support_size;
  bool pad_support = false;

  friend bool operator==(const AdversarialRules&, const AdversarialRules&) = default;
};

// Answers generative queries "most favourably" for the impossibility
// constructions: maximise the query objective, then the number of approving
// agents inside S, and prefer an unpopular statement on any remaining tie.
// Statements present at construction time are the popular ones; unpopular
// ones are fabricated on demand and appended to the instance.
class AdversarialOracle : public OracleBase {
 public:
  AdversarialOracle(Instance instance, AdversarialRules rules)
      : OracleBase(std::move(instance), rules.size_limit),
        rules_(rules),
        popular_count_(instance_.num_statements()) {
    if (rules_.support_size == 0) throw PreconditionError("support size must be positive");
  }

  const AdversarialRules& rules() const { return rules_; }
  std::size_t popular_count() const { return popular_count_; }
  bool is_popular(StatementRef s) const { return s < popular_count_; }
  std::size_t fabricated_count() const { return instance_.num_statements() - popular_count_; }

  StatementRef gen(std::span<const AgentId> agents, std::size_t r) {
    check_gen(agents, r);

    std::vector<AgentId> sorted(agents.begin(), agents.end());
    std::sort(sorted.begin(), sorted.end());
    const std::size_t covered = std::min(sorted.size(), rules_.support_size);

    std::vector<double> inside(sorted.size(), 0.0);
    std::fill_n(inside.begin(), covered, 1.0);
    const auto unpopular_key = std::make_tuple(rth_largest(inside, r), covered);

    std::optional<StatementRef> best_popular;
    auto best_key = unpopular_key;
    for (StatementRef s = 0; s < popular_count_; ++s) {
      const auto key = std::make_tuple(objective(agents, r, s), approvals(agents, s));
      if (key > best_key) {
        best_key = key;
        best_popular = s;
      }
    }
    if (best_popular) return log_gen(agents.size(), r, *best_popular);

    std::vector<AgentId> support(sorted.begin(),
                                 sorted.begin() + static_cast<std::ptrdiff_t>(covered));
    if (rules_.pad_support) {
      for (AgentId i = 0; i < instance_.n() && support.size() < rules_.support_size; ++i) {
        if (!std::binary_search(sorted.begin(), sorted.end(), i)) support.push_back(i);
      }
      std::sort(support.begin(), support.end());
    }
    return log_gen(agents.size(), r, fabricate(support));
  }

  StatementRef fallback_statement() const { return 0; }

 private:
  std::size_t approvals(std::span<const AgentId> agents, StatementRef s) const {
    const auto col = instance_.column(s);
    std::size_t c = 0;
    for (AgentId i : agents) c += col[i] > 0.0;
    return c;
  }

  StatementRef fabricate(const std::vector<AgentId>& support) {
    if (auto it = fabricated_.find(support); it != fabricated_.end()) return it->second;
    std::vector<double> column(instance_.n(), 0.0);
    for (AgentId i : support) column[i] = 1.0;
    const StatementRef s = instance_.add_statement(
        Statement{"unpopular-" + std::to_string(fabricated_.size() + 1), std::nullopt,
                  std::nullopt},
        std::move(column));
    fabricated_.emplace(support, s);
    return s;
  }

  AdversarialRules rules_;
  std::size_t popular_count_;
  std::map<std::vector<AgentId>, StatementRef> fabricated_;
};

// Generative queries over axis-aligned boxes. Any box covering r agents of S
// attains the maximum objective 1; the returned one is the bounding box of r
// agents grown from the lowest-index agent of S by repeatedly adding the
// agent nearest (Euclidean, ties by index) to the grown set.
class BoxOracle : public OracleBase {
 public:
  explicit BoxOracle(Instance instance,
                     std::optional<std::size_t> size_limit = std::nullopt)
      : OracleBase(std::move(instance), size_limit) {
    if (!instance_.is_box_space()) {
      throw InvalidInstanceError("box oracle needs an instance with agent points");
    }
  }

  StatementRef gen(std::span<const AgentId> agents, std::size_t r) {
    check_gen(agents, r);
    if (r == 0) throw OutOfRangeError("box gen: r must be >= 1");
    const auto members = grow_cluster(agents, r);
    return log_gen(agents.size(), r, materialize(instance_.points()->bounding_box(members)));
  }

  // The unit box at the origin.
  StatementRef fallback_statement() {
    const std::size_t d = instance_.points()->dims();
    return materialize(Box{std::vector<double>(d, 0.0), std::vector<double>(d, 1.0)});
  }

  std::vector<AgentId> grow_cluster(std::span<const AgentId> agents, std::size_t r) const {
    const PointSet& pts = *instance_.points();
    std::vector<AgentId> pool(agents.begin(), agents.end());
    std::sort(pool.begin(), pool.end());
    std::vector<double> dist(pool.size(), std::numeric_limits<double>::infinity());
    std::vector<char> taken(pool.size(), 0);
    std::vector<AgentId> members;
    members.reserve(r);

    std::size_t next = 0;
    while (members.size() < r) {
      taken[next] = 1;
      members.push_back(pool[next]);
      const auto p = pts.point(pool[next]);
      std::optional<std::size_t> best;
      for (std::size_t j = 0; j < pool.size(); ++j) {
        if (taken[j]) continue;
        const auto q = pts.point(pool[j]);
        double d2 = 0.0;
        for (std::size_t d = 0; d < pts.dims(); ++d) d2 += (p[d] - q[d]) * (p[d] - q[d]);
        dist[j] = std::min(dist[j], d2);
        if (!best || dist[j] < dist[*best]) best = j;
      }
      if (!best) break;
      next = *best;
    }
    std::sort(members.begin(), members.end());
    return members;
  }

 private:
  StatementRef materialize(Box box) {
    for (StatementRef s = 0; s < instance_.num_statements(); ++s) {
      const auto& existing = instance_.statement(s).box;
      if (existing && *existing == box) return s;
    }
    std::size_t suffix = instance_.num_statements() + 1;
    while (instance_.find("box-" + std::to_string(suffix))) ++suffix;
    return instance_.add_box("box-" + std::to_string(suffix), std::move(box));
  }
};

}  // namespace gsc

#endif  // GSC_ORACLES_HPP_
