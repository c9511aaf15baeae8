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

#ifndef GSC_PROCESSES_HPP_
#define GSC_PROCESSES_HPP_

#include <cmath>
#include <cstdint>
#include <limits>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "gsc/core.hpp"
#include "gsc/oracles.hpp"
#include "gsc/random.hpp"

namespace gsc {

struct ParametersInfeasibleError : Error {
  using Error::Error;
};
struct InstanceTooLargeError : Error {
  using Error::Error;
};

struct RoundRecord {
  std::size_t round = 0;  // 1-based
  std::size_t quota = 0;
  StatementRef statement = 0;
  std::string statement_id;
  std::vector<AgentId> removed;  // ascending
  // Sampled process only.
  std::optional<std::size_t> sample_size;      // |Y_j|
  std::optional<std::size_t> gen_r;            // ceil(r_bar_x) when queried
  std::optional<double> theta;                 // -inf on fallback
  bool fallback = false;
};

// Inputs of the sampling-based process.
struct SamplingParams {
  double pac_constant = 1.0;  // C
  std::size_t vc_dim = 0;     // d
  double delta = 0.05;        // error probability
  std::optional<std::size_t> sample_size_override;
};

// Quantities derived from SamplingParams for a given (n, k).
struct SamplingSchedule {
  double formula_sample_size = 0.0;  // 16 C k^4 (d + ln(k/delta)), unrounded
  std::size_t sample_size = 0;       // n_x after override and clamp
  bool clamped = false;              // n <= 2 n_x, so n_x = n
  double epsilon = 0.0;              // 1/(4k^2)
  double r_bar_x = 0.0;              // n_x (1/k - eps)
  double r_bar = 0.0;                // n (1/k - 2 eps)
  std::size_t gen_r = 0;             // ceil(r_bar_x)

  std::size_t round_quota(std::size_t j, std::size_t n, std::size_t k) const {
    const auto lo = static_cast<std::size_t>(std::floor(r_bar));
    const auto hi = static_cast<std::size_t>(std::ceil(r_bar));
    return j <= n - k * lo ? hi : lo;
  }
};

inline SamplingSchedule resolve_sampling(const SamplingParams& p, std::size_t n,
                                         std::size_t k) {
  if (!(p.delta > 0.0 && p.delta < 1.0)) {
    throw ParametersInfeasibleError("delta must lie in (0, 1)");
  }
  if (!(p.pac_constant > 0.0)) throw ParametersInfeasibleError("C must be positive");
  if (k == 0 || k > n) throw InvalidInstanceError("sampling: need 1 <= k <= n");
  if (p.sample_size_override && *p.sample_size_override == 0) {
    throw ParametersInfeasibleError("sample size override must be positive");
  }

  SamplingSchedule s;
  const double kd = static_cast<double>(k);
  s.formula_sample_size = 16.0 * p.pac_constant * kd * kd * kd * kd *
                          (static_cast<double>(p.vc_dim) + std::log(kd / p.delta));
  s.sample_size = p.sample_size_override
                      ? *p.sample_size_override
                      : static_cast<std::size_t>(std::ceil(s.formula_sample_size));
  if (n <= 2 * s.sample_size) {
    s.sample_size = n;
    s.clamped = true;
  }
  s.epsilon = 1.0 / (4.0 * kd * kd);
  s.r_bar_x = static_cast<double>(s.sample_size) * (1.0 / kd - s.epsilon);
  s.r_bar = static_cast<double>(n) * (1.0 / kd - 2.0 * s.epsilon);
  s.gen_r = static_cast<std::size_t>(std::ceil(s.r_bar_x));
  if (s.r_bar < 1.0) {
    throw ParametersInfeasibleError(
        "r_bar = n(1/k - 2 eps) = " + std::to_string(s.r_bar) +
        " < 1; raise n or lower k");
  }
  return s;
}

struct ProcessRun {
  std::string process;
  std::size_t n = 0;
  std::size_t k = 0;
  Slate slate;
  BalancedMatching matching;
  std::vector<RoundRecord> rounds;
  std::vector<AgentId> leftover;  // agents placed after the k rounds
  std::uint64_t rng_seed = 0;
  bool success = true;
  std::optional<SamplingSchedule> schedule;
};

namespace detail {

inline void remove_agents(std::vector<AgentId>& remaining,
                          const std::vector<AgentId>& removed) {
  std::erase_if(remaining, [&](AgentId i) {
    return std::binary_search(removed.begin(), removed.end(), i);
  });
}

template <QueryOracle O>
std::vector<AgentId> top_by_disc(O& oracle, std::span<const AgentId> pool,
                                 std::size_t r, StatementRef s) {
  auto top = top_agents(pool, r, [&](AgentId i) { return oracle.disc(i, s); });
  std::sort(top.begin(), top.end());
  return top;
}

template <QueryOracle O, class GenFn>
ProcessRun greedy_impl(O& oracle, std::size_t n, std::size_t k, GenFn&& gen,
                       std::string name) {
  const auto quotas = balance_quotas(n, k);
  ProcessRun run;
  run.process = std::move(name);
  run.n = n;
  run.k = k;
  run.matching.slot_of.assign(n, 0);
  std::vector<AgentId> remaining = iota_agents(n);

  for (std::size_t j = 0; j < k; ++j) {
    const std::size_t r = quotas[j];
    if (remaining.size() < r) throw Error("greedy: ran out of agents (quota arithmetic)");
    const StatementRef alpha = gen(std::span<const AgentId>(remaining), r);
    RoundRecord rec;
    rec.round = j + 1;
    rec.quota = r;
    rec.statement = alpha;
    rec.statement_id = oracle.statement_id(alpha);
    rec.removed = top_by_disc(oracle, remaining, r, alpha);
    for (AgentId i : rec.removed) run.matching.slot_of[i] = j;
    remove_agents(remaining, rec.removed);
    run.slate.members.push_back(alpha);
    run.rounds.push_back(std::move(rec));
  }
  return run;
}

inline std::uint64_t binomial_capped(std::size_t n, std::size_t r, std::uint64_t cap) {
  if (r > n) return 0;
  r = std::min(r, n - r);
  std::uint64_t c = 1;
  for (std::size_t j = 1; j <= r; ++j) {
    c = c * (n - r + j) / j;
    if (c > cap) return cap + 1;
  }
  return c;
}

}  // namespace detail

// Greedy balanced process: k rounds, round j picks gen(S, r_j) and removes
// the r_j remaining agents that like it most.
template <QueryOracle O>
ProcessRun greedy_bjr(O& oracle, std::size_t n, std::size_t k) {
  return detail::greedy_impl(
      oracle, n, k,
      [&](std::span<const AgentId> agents, std::size_t r) { return oracle.gen(agents, r); },
      "greedy");
}

// Simulates an unconstrained gen(S, r) with r-sized queries: ask gen(S', r)
// for every r-subset S' of S and keep the answer whose r-th largest utility
// over all of S (measured with disc) is highest. Exponential; guarded by
// `enumeration_cap` on C(|S|, r).
template <QueryOracle O>
StatementRef simulate_gen_by_subsets(O& oracle, std::span<const AgentId> agents,
                                     std::size_t r,
                                     std::uint64_t enumeration_cap = 100000) {
  if (agents.empty()) throw PreconditionError("simulate_gen_by_subsets: empty agent set");
  if (r > agents.size()) {
    throw OutOfRangeError("simulate_gen_by_subsets: r exceeds |S|");
  }
  if (r == 0) {
    // Every statement attains +inf; a single one-agent query answers it.
    return oracle.gen(agents.first(1), 0);
  }
  const std::uint64_t count = detail::binomial_capped(agents.size(), r, enumeration_cap);
  if (count > enumeration_cap) {
    throw InstanceTooLargeError("simulate_gen_by_subsets: C(" +
                                std::to_string(agents.size()) + ", " + std::to_string(r) +
                                ") exceeds the enumeration cap " +
                                std::to_string(enumeration_cap));
  }

  std::vector<AgentId> pool(agents.begin(), agents.end());
  std::sort(pool.begin(), pool.end());
  std::vector<std::size_t> idx(r);
  for (std::size_t j = 0; j < r; ++j) idx[j] = j;

  std::map<StatementRef, ExtendedReal> scored;
  std::optional<StatementRef> best;
  ExtendedReal best_value = -std::numeric_limits<double>::infinity();
  std::vector<AgentId> subset(r);
  while (true) {
    for (std::size_t j = 0; j < r; ++j) subset[j] = pool[idx[j]];
    const StatementRef alpha = oracle.gen(std::span<const AgentId>(subset), r);
    if (!scored.contains(alpha)) {
      std::vector<double> vals;
      vals.reserve(pool.size());
      for (AgentId i : pool) vals.push_back(oracle.disc(i, alpha));
      const ExtendedReal v = rth_largest(vals, r);
      scored.emplace(alpha, v);
      if (!best || v > best_value) {
        best = alpha;
        best_value = v;
      }
    }
    // next combination in lexicographic order
    std::size_t j = r;
    while (j > 0 && idx[j - 1] == pool.size() - r + (j - 1)) --j;
    if (j == 0) break;
    ++idx[j - 1];
    for (std::size_t l = j; l < r; ++l) idx[l] = idx[l - 1] + 1;
  }
  return *best;
}

// Greedy process with every generative query replaced by subset simulation,
// so only ceil(n/k)-sized generative queries are issued.
template <QueryOracle O>
ProcessRun greedy_bjr_by_subsets(O& oracle, std::size_t n, std::size_t k,
                                 std::uint64_t enumeration_cap = 100000) {
  return detail::greedy_impl(
      oracle, n, k,
      [&](std::span<const AgentId> agents, std::size_t r) {
        return simulate_gen_by_subsets(oracle, agents, r, enumeration_cap);
      },
      "subset-sim");
}

// Sampling-based process for size-constrained generative queries. Each round
// samples n_x agents from all of N, queries gen on the still-unremoved part
// of the sample, and removes r_j agents. Agents left after k rounds fill the
// remaining slot capacities, each going to the slot it values most (ties to
// the earlier round).
template <QueryOracle O>
ProcessRun sampled_bjr(O& oracle, std::size_t n, std::size_t k,
                       const SamplingParams& params, std::uint64_t seed) {
  const SamplingSchedule sched = resolve_sampling(params, n, k);
  if (oracle.size_limit() && *oracle.size_limit() < sched.sample_size) {
    throw PreconditionError("sampled_bjr: oracle size limit " +
                            std::to_string(*oracle.size_limit()) + " is below n_x = " +
                            std::to_string(sched.sample_size));
  }

  ProcessRun run;
  run.process = "sampled";
  run.n = n;
  run.k = k;
  run.rng_seed = seed;
  run.schedule = sched;
  run.matching.slot_of.assign(n, 0);

  Rng rng(seed);
  const std::vector<AgentId> everyone = iota_agents(n);
  std::vector<AgentId> remaining = everyone;

  for (std::size_t j = 1; j <= k; ++j) {
    const auto sample = sample_without_replacement(everyone, sched.sample_size, rng);
    std::vector<AgentId> in_play;
    std::set_intersection(sample.begin(), sample.end(), remaining.begin(), remaining.end(),
                          std::back_inserter(in_play));

    RoundRecord rec;
    rec.round = j;
    rec.sample_size = in_play.size();
    if (static_cast<double>(in_play.size()) >= sched.r_bar_x) {
      rec.gen_r = sched.gen_r;
      rec.statement = oracle.gen(std::span<const AgentId>(in_play), sched.gen_r);
      std::vector<double> vals;
      vals.reserve(in_play.size());
      for (AgentId i : in_play) vals.push_back(oracle.disc(i, rec.statement));
      rec.theta = rth_largest(vals, sched.gen_r).value();
    } else {
      rec.statement = oracle.fallback_statement();
      rec.theta = -std::numeric_limits<double>::infinity();
      rec.fallback = true;
      run.success = false;
    }
    rec.statement_id = oracle.statement_id(rec.statement);
    rec.quota = sched.round_quota(j, n, k);
    if (rec.quota > remaining.size()) throw Error("sampled_bjr: quota exceeds remaining agents");
    rec.removed = detail::top_by_disc(oracle, remaining, rec.quota, rec.statement);
    for (AgentId i : rec.removed) run.matching.slot_of[i] = j - 1;
    detail::remove_agents(remaining, rec.removed);
    run.slate.members.push_back(rec.statement);
    run.rounds.push_back(std::move(rec));
  }

  // Slot capacities: the larger balanced loads go to the larger rounds.
  std::vector<std::size_t> order(k);
  for (std::size_t j = 0; j < k; ++j) order[j] = j;
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return run.rounds[a].quota > run.rounds[b].quota;
  });
  const auto loads = balance_quotas(n, k);
  std::vector<std::size_t> spare(k);
  for (std::size_t pos = 0; pos < k; ++pos) {
    const std::size_t slot = order[pos];
    if (loads[pos] < run.rounds[slot].quota) {
      throw Error("sampled_bjr: round quota exceeds its balanced load");
    }
    spare[slot] = loads[pos] - run.rounds[slot].quota;
  }

  run.leftover = remaining;
  for (AgentId i : remaining) {
    std::optional<std::size_t> best;
    double best_u = 0.0;
    std::map<StatementRef, double> seen;
    for (std::size_t slot = 0; slot < k; ++slot) {
      if (spare[slot] == 0) continue;
      const StatementRef s = run.slate[slot];
      auto it = seen.find(s);
      if (it == seen.end()) it = seen.emplace(s, oracle.disc(i, s)).first;
      if (!best || it->second > best_u) {
        best = slot;
        best_u = it->second;
      }
    }
    if (!best) throw Error("sampled_bjr: no spare capacity for leftover agent");
    --spare[*best];
    run.matching.slot_of[i] = *best;
  }
  return run;
}

}  // namespace gsc

#endif  // GSC_PROCESSES_HPP_
