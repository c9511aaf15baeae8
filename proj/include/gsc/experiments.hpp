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

// Monte Carlo harnesses. Trial t of a run with master seed M draws all of its
// randomness from derive_seed(M, <label>, t), so any single trial can be
// replayed in isolation and trials may run in any order.

#ifndef GSC_EXPERIMENTS_HPP_
#define GSC_EXPERIMENTS_HPP_

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "gsc/axioms.hpp"
#include "gsc/core.hpp"
#include "gsc/instances.hpp"
#include "gsc/oracles.hpp"
#include "gsc/parallel.hpp"
#include "gsc/processes.hpp"
#include "gsc/random.hpp"

namespace gsc {

struct TranscriptViolationError : Error {
  using Error::Error;
};

struct TrialOutcome {
  std::size_t trial = 0;
  std::uint64_t seed = 0;
  bool violation = false;
  bool success = false;
  double deviation = std::numeric_limits<double>::quiet_NaN();
  std::size_t gen_queries = 0;
  double mean_query_size = 0.0;
  std::string witness;  // statement witnessing a violation, if any
};

struct TrialSummary {
  double rate = 0.0;  // violation rate (impossibility) or success rate (sampling)
  double mean = std::numeric_limits<double>::quiet_NaN();
  double median = std::numeric_limits<double>::quiet_NaN();
  double q05 = std::numeric_limits<double>::quiet_NaN();
  double q95 = std::numeric_limits<double>::quiet_NaN();
  double mean_query_size = 0.0;
};

struct TrialReport {
  std::string experiment;
  std::uint64_t master_seed = 0;
  std::vector<TrialOutcome> outcomes;
  TrialSummary summary;

  std::size_t trials() const { return outcomes.size(); }

  void write_csv(std::ostream& os) const {
    os << "trial,seed,violation,success,deviation,gen_queries,mean_query_size,witness\n";
    for (const auto& o : outcomes) {
      os << o.trial << ',' << o.seed << ',' << o.violation << ',' << o.success << ',';
      if (!std::isnan(o.deviation)) os << o.deviation;
      os << ',' << o.gen_queries << ',' << o.mean_query_size << ',' << o.witness << '\n';
    }
  }
};

// Linear-interpolation quantile (type 7) of an unsorted sample.
inline double quantile(std::vector<double> xs, double q) {
  if (xs.empty()) return std::numeric_limits<double>::quiet_NaN();
  std::sort(xs.begin(), xs.end());
  const double pos = q * static_cast<double>(xs.size() - 1);
  const auto lo = static_cast<std::size_t>(std::floor(pos));
  const std::size_t hi = std::min(lo + 1, xs.size() - 1);
  return xs[lo] + (pos - static_cast<double>(lo)) * (xs[hi] - xs[lo]);
}

namespace detail {

inline TrialSummary summarize(const std::vector<TrialOutcome>& outcomes,
                              const std::function<bool(const TrialOutcome&)>& counted) {
  TrialSummary s;
  if (outcomes.empty()) return s;
  std::vector<double> dev;
  double hits = 0.0;
  double qsize = 0.0;
  for (const auto& o : outcomes) {
    hits += counted(o) ? 1.0 : 0.0;
    qsize += o.mean_query_size;
    if (!std::isnan(o.deviation)) dev.push_back(o.deviation);
  }
  const double count = static_cast<double>(outcomes.size());
  s.rate = hits / count;
  s.mean_query_size = qsize / count;
  if (!dev.empty()) {
    double sum = 0.0;
    for (double d : dev) sum += d;
    s.mean = sum / static_cast<double>(dev.size());
    s.median = quantile(dev, 0.5);
    s.q05 = quantile(dev, 0.05);
    s.q95 = quantile(dev, 0.95);
  }
  return s;
}

inline double mean_of(const std::vector<std::size_t>& xs) {
  if (xs.empty()) return 0.0;
  double s = 0.0;
  for (auto x : xs) s += static_cast<double>(x);
  return s / static_cast<double>(xs.size());
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Uniform convergence of support fractions under sampling without
// replacement.

// sup over (a, t) of | |{i in sample: u_i(a) >= t}|/m - |{i: u_i(a) >= t}|/n |,
// with t ranging over the observed utilities of a.
inline double supp_fraction_deviation(const Instance& instance,
                                      std::span<const AgentId> sample) {
  if (sample.empty()) throw PreconditionError("deviation: empty sample");
  const double n = static_cast<double>(instance.n());
  const double m = static_cast<double>(sample.size());
  double worst = 0.0;
  for (StatementRef a = 0; a < instance.num_statements(); ++a) {
    const auto col = instance.column(a);
    std::vector<double> pop(col.begin(), col.end());
    std::vector<double> smp;
    smp.reserve(sample.size());
    for (AgentId i : sample) smp.push_back(col[i]);
    std::sort(pop.begin(), pop.end());
    std::sort(smp.begin(), smp.end());
    for (double theta : detail::distinct_values(col)) {
      const auto at_least = [theta](const std::vector<double>& v) {
        return static_cast<double>(v.end() - std::lower_bound(v.begin(), v.end(), theta));
      };
      worst = std::max(worst, std::abs(at_least(smp) / m - at_least(pop) / n));
    }
  }
  return worst;
}

inline double pac_deviation_trial(const Instance& instance, std::size_t m, Rng& rng) {
  if (m == 0 || 2 * m > instance.n()) {
    throw PreconditionError("pac_deviation_trial: need 1 <= m <= n/2 (m = " +
                            std::to_string(m) + ", n = " + std::to_string(instance.n()) + ")");
  }
  const auto everyone = iota_agents(instance.n());
  const auto sample = sample_without_replacement(everyone, m, rng);
  return supp_fraction_deviation(instance, sample);
}

inline TrialReport pac_experiment(const Instance& instance, std::size_t m,
                                  std::size_t trials, std::uint64_t master_seed,
                                  std::size_t threads = 1) {
  TrialReport report;
  report.experiment = "pac";
  report.master_seed = master_seed;
  report.outcomes.resize(trials);
  detail::parallel_for(trials, threads, [&](std::size_t t) {
    TrialOutcome& o = report.outcomes[t];
    o.trial = t;
    o.seed = derive_seed(master_seed, "pac", t);
    Rng rng(o.seed);
    o.deviation = pac_deviation_trial(instance, m, rng);
  });
  report.summary = detail::summarize(report.outcomes, [](const auto&) { return false; });
  return report;
}

// ---------------------------------------------------------------------------
// Impossibility demonstrations.

enum class QueryPolicy { kRandom, kSequential };

inline const char* to_string(QueryPolicy p) {
  return p == QueryPolicy::kRandom ? "random" : "sequential";
}
inline QueryPolicy parse_query_policy(const std::string& s) {
  if (s == "random") return QueryPolicy::kRandom;
  if (s == "sequential") return QueryPolicy::kSequential;
  throw Error("unknown query policy '" + s + "' (random|sequential)");
}

// Greedy process restricted to generative queries of size <= t. Each round
// asks gen(Q, min(r_j, |Q|)) for a query set Q of the remaining agents chosen
// by `policy` (uniform random t-subset, or the t lowest-index agents). Once
// `budget` generative queries are spent, rounds reuse the earlier slate
// member with the highest r_j-th largest utility over the remaining agents.
template <QueryOracle O>
ProcessRun subset_greedy(O& oracle, std::size_t n, std::size_t k, std::size_t t,
                         QueryPolicy policy, std::optional<std::size_t> budget,
                         std::uint64_t seed) {
  const auto quotas = balance_quotas(n, k);
  Rng rng(seed);
  ProcessRun run;
  run.process = std::string("subset-greedy-") + to_string(policy);
  run.n = n;
  run.k = k;
  run.rng_seed = seed;
  run.matching.slot_of.assign(n, 0);
  std::vector<AgentId> remaining = iota_agents(n);
  std::size_t used = 0;

  for (std::size_t j = 0; j < k; ++j) {
    const std::size_t r = quotas[j];
    StatementRef alpha = 0;
    if (!budget || used < *budget) {
      const std::size_t q = std::min(t, remaining.size());
      std::vector<AgentId> query =
          policy == QueryPolicy::kRandom
              ? sample_without_replacement(remaining, q, rng)
              : std::vector<AgentId>(remaining.begin(),
                                     remaining.begin() + static_cast<std::ptrdiff_t>(q));
      alpha = oracle.gen(std::span<const AgentId>(query), std::min(r, query.size()));
      ++used;
    } else {
      ExtendedReal best = -std::numeric_limits<double>::infinity();
      for (std::size_t slot = 0; slot < run.slate.size(); ++slot) {
        std::vector<double> vals;
        for (AgentId i : remaining) vals.push_back(oracle.disc(i, run.slate[slot]));
        const ExtendedReal v = rth_largest(vals, r);
        if (slot == 0 || v > best) {
          best = v;
          alpha = run.slate[slot];
        }
      }
    }
    RoundRecord rec;
    rec.round = j + 1;
    rec.quota = r;
    rec.statement = alpha;
    rec.statement_id = oracle.statement_id(alpha);
    rec.removed = detail::top_by_disc(oracle, remaining, r, alpha);
    for (AgentId i : rec.removed) run.matching.slot_of[i] = j;
    detail::remove_agents(remaining, rec.removed);
    run.slate.members.push_back(alpha);
    run.rounds.push_back(std::move(rec));
  }
  return run;
}

inline void check_transcript(const Transcript& transcript, std::size_t t,
                             std::optional<std::size_t> budget) {
  if (transcript.max_gen_set_size() > t) {
    throw TranscriptViolationError("generative query of size " +
                                   std::to_string(transcript.max_gen_set_size()) +
                                   " exceeds t = " + std::to_string(t));
  }
  if (budget && transcript.count(QueryKind::kGen) > *budget) {
    throw TranscriptViolationError("issued " +
                                   std::to_string(transcript.count(QueryKind::kGen)) +
                                   " generative queries, budget " + std::to_string(*budget));
  }
}

// Runs the size-t subset-greedy process against the adversarial oracle of a
// prop32/thm34 construction and records whether the slate violates JR.
// `budget` overrides the construction's query budget when set.
inline TrialReport impossibility_demo(const ConstructionSpec& spec, QueryPolicy policy,
                                      std::size_t trials, std::uint64_t master_seed,
                                      std::optional<std::size_t> budget = std::nullopt,
                                      std::size_t threads = 1) {
  if (spec.kind != ConstructionKind::kProp32 && spec.kind != ConstructionKind::kThm34) {
    throw InvalidSpecError("impossibility_demo: kind must be prop32 or thm34");
  }
  TrialReport report;
  report.experiment = std::string("impossibility-") + to_string(spec.kind) + "-" +
                      to_string(policy);
  report.master_seed = master_seed;
  report.outcomes.resize(trials);
  detail::parallel_for(trials, threads, [&](std::size_t trial) {
    TrialOutcome& o = report.outcomes[trial];
    o.trial = trial;
    o.seed = derive_seed(master_seed, "impossibility", trial);
    ConstructionSpec s = spec;
    s.seed = derive_seed(o.seed, "instance");
    BuiltInstance built = build(s);
    const AdversarialRules rules = *built.adversarial;
    const auto limit = budget ? budget : built.query_budget;
    if (limit && *limit == 0) throw InvalidSpecError("query budget must allow one query");

    AdversarialOracle oracle(std::move(built.instance), rules);
    const ProcessRun run = subset_greedy(oracle, s.n, s.k, rules.size_limit, policy, limit,
                                         derive_seed(o.seed, "process"));
    check_transcript(oracle.transcript(), rules.size_limit, limit);
    const auto v = check_jr(oracle.instance(), run.slate);
    o.violation = v.has_value();
    if (v) o.witness = v->statement_label(oracle.instance());
    const auto sizes = oracle.transcript().gen_set_sizes();
    o.gen_queries = sizes.size();
    o.mean_query_size = detail::mean_of(sizes);
  });
  report.summary = detail::summarize(report.outcomes,
                                     [](const TrialOutcome& o) { return o.violation; });
  return report;
}

// ---------------------------------------------------------------------------
// Success rate of the sampling process, judged by each run's own matching.

inline TrialReport sampled_bjr_success_rate(const ConstructionSpec& spec,
                                            const SamplingParams& params,
                                            std::size_t trials, std::uint64_t master_seed,
                                            std::size_t threads = 1) {
  TrialReport report;
  report.experiment = std::string("sampling-") + to_string(spec.kind);
  report.master_seed = master_seed;
  report.outcomes.resize(trials);
  detail::parallel_for(trials, threads, [&](std::size_t trial) {
    TrialOutcome& o = report.outcomes[trial];
    o.trial = trial;
    o.seed = derive_seed(master_seed, "sampling", trial);
    ConstructionSpec s = spec;
    s.seed = derive_seed(o.seed, "instance");
    BuiltInstance built = build(s);
    const std::size_t n = built.instance.n();
    const std::size_t k = built.instance.k();
    const SamplingSchedule sched = resolve_sampling(params, n, k);

    auto evaluate = [&](auto& oracle) {
      const ProcessRun run = sampled_bjr(oracle, n, k, params, derive_seed(o.seed, "process"));
      const auto v = find_bjr_violation(oracle.instance(), run.slate, run.matching);
      o.violation = v.has_value();
      o.success = !v;
      if (v) o.witness = v->statement_label(oracle.instance());
      const auto sizes = oracle.transcript().gen_set_sizes();
      if (!sizes.empty() && *std::max_element(sizes.begin(), sizes.end()) > sched.sample_size) {
        throw TranscriptViolationError("sampled_bjr issued a query larger than n_x");
      }
      o.gen_queries = sizes.size();
      o.mean_query_size = detail::mean_of(sizes);
    };
    if (built.oracle == OracleKind::kBox) {
      BoxOracle oracle(std::move(built.instance), sched.sample_size);
      evaluate(oracle);
    } else if (built.oracle == OracleKind::kExact) {
      ExactOracle oracle(std::move(built.instance), sched.sample_size);
      evaluate(oracle);
    } else {
      throw InvalidSpecError("sampling experiment needs a box or finite instance");
    }
  });
  report.summary = detail::summarize(report.outcomes,
                                     [](const TrialOutcome& o) { return o.success; });
  return report;
}

}  // namespace gsc

#endif  // GSC_EXPERIMENTS_HPP_
