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

// Language-model implementations of the two query types.
//
// disc: the model reads a participant's free-form answers and their ratings
// of example statements, and the probabilities of the next token being one of
// the digits 0-4 give a rating distribution whose mean is the utility.
//
// gen: an ensemble. Each call adds candidates to a shared pool from six
// sources (all of S at temperature 0 and 1, a random 5 of S, and three
// nearest-neighbour clusters) and returns the pool member with the highest
// r-th largest predicted utility over S.

#ifndef GSC_LLM_ADAPTER_HPP_
#define GSC_LLM_ADAPTER_HPP_

#include <algorithm>
#include <cctype>
#include <cmath>
#include <map>
#include <mutex>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "gsc/core.hpp"
#include "gsc/llm/prompts.hpp"
#include "gsc/llm/transport.hpp"
#include "gsc/llm/types.hpp"
#include "gsc/oracles.hpp"
#include "gsc/parallel.hpp"
#include "gsc/random.hpp"

namespace gsc::llm {

struct LlmOptions {
  std::string model = "gpt-4";
  int top_logprobs = 20;
  int generation_max_tokens = 150;
  int summary_max_tokens = 250;
  // Temperature for the random-5 and nearest-neighbour sources.
  double aux_temperature = 0.0;
  // Condense free-form answers when a discriminative prompt would exceed
  // this many (estimated) tokens.
  std::optional<std::size_t> prompt_token_budget;
  std::size_t parallelism = 1;
};

// Probability mass per rating digit in a first-token distribution. Tokens
// are matched after trimming whitespace; repeated digits add up.
inline std::array<double, kRatingLevels> digit_masses(const CompletionResponse& resp) {
  std::array<double, kRatingLevels> mass{};
  for (const auto& t : resp.top_logprobs) {
    std::string tok = t.token;
    tok.erase(std::remove_if(tok.begin(), tok.end(),
                             [](unsigned char c) { return std::isspace(c); }),
              tok.end());
    if (tok.size() == 1 && tok[0] >= '0' && tok[0] <= '4') {
      mass[static_cast<std::size_t>(tok[0] - '0')] += std::exp(t.logprob);
    }
  }
  return mass;
}

inline RatingDistribution parse_rating_distribution(const CompletionResponse& resp) {
  const auto mass = digit_masses(resp);
  if (std::all_of(mass.begin(), mass.end(), [](double m) { return m <= 0.0; })) {
    throw UnparseableResponseError("response has none of the rating tokens 0-4 among its "
                                   "top log-probabilities");
  }
  return RatingDistribution::from_masses(mass);
}

// Predicted rating distributions keyed by (participant id, statement text).
class RatingCache {
 public:
  std::optional<RatingDistribution> find(const std::string& participant,
                                         const std::string& statement) const {
    std::lock_guard lock(mu_);
    const auto it = entries_.find(key(participant, statement));
    if (it == entries_.end()) return std::nullopt;
    return it->second;
  }
  void store(const std::string& participant, const std::string& statement,
             const RatingDistribution& d) {
    std::lock_guard lock(mu_);
    entries_[key(participant, statement)] = d;
  }
  std::size_t size() const {
    std::lock_guard lock(mu_);
    return entries_.size();
  }

 private:
  static std::string key(const std::string& participant, const std::string& statement) {
    return participant + '\x1f' + hex64(fnv1a64(statement));
  }
  mutable std::mutex mu_;
  std::unordered_map<std::string, RatingDistribution> entries_;
};

struct PoolEntry {
  std::string text;
  std::string provenance;  // initial-cluster, all-temp0, all-temp1, random5, nn(...)
};

// Candidate statements; grows monotonically, identical texts are stored once.
class StatementPool {
 public:
  std::size_t add(std::string text, std::string provenance) {
    std::lock_guard lock(mu_);
    for (std::size_t s = 0; s < entries_.size(); ++s) {
      if (entries_[s].text == text) return s;
    }
    entries_.push_back({std::move(text), std::move(provenance)});
    return entries_.size() - 1;
  }
  std::size_t size() const {
    std::lock_guard lock(mu_);
    return entries_.size();
  }
  PoolEntry entry(std::size_t s) const {
    std::lock_guard lock(mu_);
    if (s >= entries_.size()) throw LookupError("unknown pool statement " + std::to_string(s));
    return entries_[s];
  }
  std::vector<PoolEntry> snapshot() const {
    std::lock_guard lock(mu_);
    return entries_;
  }

 private:
  mutable std::mutex mu_;
  std::vector<PoolEntry> entries_;
};

struct SourceOutcome {
  std::string provenance;
  std::vector<std::size_t> group;  // participant indices given to the prompt
  std::optional<std::size_t> statement;
  std::string error;
};

struct EnsembleResult {
  std::size_t statement = 0;  // pool index
  ExtendedReal objective = 0.0;
  std::vector<SourceOutcome> sources;
};

class LlmAdapter {
 public:
  LlmAdapter(Transport& transport, PromptLibrary prompts, LlmOptions options = {})
      : transport_(transport), prompts_(std::move(prompts)), options_(std::move(options)) {}

  const LlmOptions& options() const { return options_; }
  const RatingCache& cache() const { return cache_; }
  const PromptLibrary& prompts() const { return prompts_; }

  RatingDistribution rating_distribution(const ParticipantRecord& p,
                                         const std::string& statement) {
    if (auto hit = cache_.find(p.id, statement)) return *hit;
    const CompletionRequest req{options_.model, approval_prompt(p, statement), 0.0, 1,
                                options_.top_logprobs};
    const RatingDistribution d = parse_rating_distribution(transport_.complete(req));
    cache_.store(p.id, statement, d);
    return d;
  }

  double disc(const ParticipantRecord& p, const std::string& statement) {
    return rating_distribution(p, statement).expectation();
  }

  std::string approval_prompt(const ParticipantRecord& p, const std::string& statement) {
    std::string prompt = render_approval_prompt(prompts_, p, statement, false);
    if (options_.prompt_token_budget && estimate_tokens(prompt) > *options_.prompt_token_budget) {
      ParticipantRecord condensed = p;
      condensed.summary = summary_for(p);
      prompt = render_approval_prompt(prompts_, condensed, statement, true);
    }
    return prompt;
  }

  std::string generate(const std::vector<const ParticipantRecord*>& group, double temperature) {
    const CompletionRequest req{options_.model, render_generation_prompt(prompts_, group, false),
                                temperature, options_.generation_max_tokens, 0};
    std::string text = transport_.complete(req).text;
    const auto first = text.find_first_not_of(" \t\r\n");
    const auto last = text.find_last_not_of(" \t\r\n");
    if (first == std::string::npos) throw UnparseableResponseError("empty generation");
    return text.substr(first, last - first + 1);
  }

  // The s candidates whose records agree most with the seed participant's
  // free-form opinion text, scored with the discriminative prompt (the seed's
  // opinion in the statement slot). Ties go to the lexicographically smaller
  // participant id.
  std::vector<std::size_t> nearest_neighbors(std::span<const ParticipantRecord> people,
                                             std::size_t seed,
                                             std::span<const std::size_t> candidates,
                                             std::size_t s) {
    if (s > candidates.size()) {
      throw PreconditionError("nearest_neighbors: s exceeds the number of candidates");
    }
    const std::string opinion = people[seed].opinion_text();
    std::vector<double> score(candidates.size());
    detail::parallel_for(candidates.size(), options_.parallelism, [&](std::size_t c) {
      score[c] = disc(people[candidates[c]], opinion);
    });
    std::vector<std::size_t> order(candidates.size());
    for (std::size_t c = 0; c < order.size(); ++c) order[c] = c;
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
      if (score[a] != score[b]) return score[a] > score[b];
      return people[candidates[a]].id < people[candidates[b]].id;
    });
    std::vector<std::size_t> out;
    for (std::size_t j = 0; j < s; ++j) out.push_back(candidates[order[j]]);
    return out;
  }

  EnsembleResult gen_ensemble(std::span<const ParticipantRecord> people,
                              std::span<const std::size_t> group, std::size_t r,
                              StatementPool& pool, Rng& rng) {
    if (group.empty()) throw PreconditionError("gen_ensemble: empty agent set");
    if (r > group.size()) throw OutOfRangeError("gen_ensemble: r exceeds |S|");

    // All random choices are drawn up front so a failing source does not
    // shift the draws of later ones.
    const std::vector<std::size_t> members(group.begin(), group.end());
    std::vector<std::size_t> sorted = members;
    std::sort(sorted.begin(), sorted.end());
    const auto random5 = sample_without_replacement(sorted, std::min<std::size_t>(5, sorted.size()), rng);
    struct NnPlan {
      std::string tag;
      std::size_t seed;
      std::vector<std::size_t> candidates;
      std::size_t s;
    };
    std::vector<NnPlan> nn_plans;
    for (const auto& [tag, s, sub] : {std::tuple{"nn(5)", 5, 0}, std::tuple{"nn(10)", 10, 0},
                                      std::tuple{"nn(5,sub20)", 5, 20}}) {
      std::uniform_int_distribution<std::size_t> pick(0, sorted.size() - 1);
      const std::size_t seed = sorted[pick(rng)];
      std::vector<std::size_t> cand;
      for (std::size_t i : sorted) {
        if (i != seed) cand.push_back(i);
      }
      if (sub > 0 && cand.size() > static_cast<std::size_t>(sub)) {
        cand = sample_without_replacement(cand, static_cast<std::size_t>(sub), rng);
      }
      nn_plans.push_back({tag, seed, std::move(cand), static_cast<std::size_t>(s)});
    }

    EnsembleResult result;
    auto run_source = [&](std::string tag, std::vector<std::size_t> grp, double temperature) {
      SourceOutcome out{std::move(tag), std::move(grp), std::nullopt, {}};
      try {
        std::vector<const ParticipantRecord*> ptrs;
        for (std::size_t i : out.group) ptrs.push_back(&people[i]);
        out.statement = pool.add(generate(ptrs, temperature), out.provenance);
      } catch (const TransportError& e) {
        out.error = e.what();
      } catch (const UnparseableResponseError& e) {
        out.error = e.what();
      }
      result.sources.push_back(std::move(out));
    };

    run_source("all-temp0", members, 0.0);
    run_source("all-temp1", members, 1.0);
    run_source("random5", random5, options_.aux_temperature);
    for (const auto& plan : nn_plans) {
      std::vector<std::size_t> cluster{plan.seed};
      try {
        const auto nn = nearest_neighbors(people, plan.seed, plan.candidates,
                                          std::min(plan.s, plan.candidates.size()));
        cluster.insert(cluster.end(), nn.begin(), nn.end());
      } catch (const Error& e) {
        result.sources.push_back({plan.tag, cluster, std::nullopt, e.what()});
        continue;
      }
      run_source(plan.tag, std::move(cluster), options_.aux_temperature);
    }
    if (std::none_of(result.sources.begin(), result.sources.end(),
                     [](const SourceOutcome& o) { return o.statement.has_value(); })) {
      std::string why;
      for (const auto& o : result.sources) why += "\n  " + o.provenance + ": " + o.error;
      throw TransportError("every generation source failed:" + why);
    }

    const auto [best, value] = pool_argmax(people, members, r, pool);
    result.statement = best;
    result.objective = value;
    return result;
  }

  // Pool member maximising the r-th largest predicted utility over `group`;
  // ties go to the earliest pool entry.
  std::pair<std::size_t, ExtendedReal> pool_argmax(std::span<const ParticipantRecord> people,
                                                   std::span<const std::size_t> group,
                                                   std::size_t r, const StatementPool& pool) {
    const auto entries = pool.snapshot();
    if (entries.empty()) throw PreconditionError("pool_argmax: empty pool");
    std::vector<double> u(entries.size() * group.size());
    detail::parallel_for(u.size(), options_.parallelism, [&](std::size_t q) {
      u[q] = disc(people[group[q % group.size()]], entries[q / group.size()].text);
    });
    std::size_t best = 0;
    ExtendedReal best_value = 0.0;
    for (std::size_t s = 0; s < entries.size(); ++s) {
      const ExtendedReal v =
          rth_largest(std::span<const double>(u).subspan(s * group.size(), group.size()), r);
      if (s == 0 || v > best_value) {
        best = s;
        best_value = v;
      }
    }
    return {best, best_value};
  }

 private:
  std::string summary_for(const ParticipantRecord& p) {
    if (p.summary) return *p.summary;
    {
      std::lock_guard lock(summary_mu_);
      if (auto it = summaries_.find(p.id); it != summaries_.end()) return it->second;
    }
    const CompletionRequest req{options_.model,
                                prompts_.summarize.render({{"opinion_dict", opinion_dict(p, false)}}),
                                0.0, options_.summary_max_tokens, 0};
    std::string text = transport_.complete(req).text;
    std::lock_guard lock(summary_mu_);
    return summaries_.emplace(p.id, std::move(text)).first->second;
  }

  Transport& transport_;
  PromptLibrary prompts_;
  LlmOptions options_;
  RatingCache cache_;
  std::mutex summary_mu_;
  std::map<std::string, std::string> summaries_;
};

// Free-function forms of the adapter queries.
inline double disc_llm(const ParticipantRecord& p, const std::string& statement,
                       LlmAdapter& adapter) {
  return adapter.disc(p, statement);
}

inline std::string gen_llm_ensemble(std::span<const ParticipantRecord> people,
                                    std::span<const std::size_t> group, std::size_t r,
                                    StatementPool& pool, LlmAdapter& adapter, Rng& rng) {
  return pool.entry(adapter.gen_ensemble(people, group, r, pool, rng).statement).text;
}

// QueryOracle over participants: statements are pool entries.
class LlmOracle {
 public:
  LlmOracle(std::vector<ParticipantRecord> people, LlmAdapter& adapter, StatementPool& pool,
            std::uint64_t seed, std::optional<std::size_t> size_limit = std::nullopt)
      : people_(std::move(people)), adapter_(adapter), pool_(pool), rng_(seed),
        size_limit_(size_limit) {}

  const std::vector<ParticipantRecord>& participants() const { return people_; }
  const Transcript& transcript() const { return transcript_; }
  std::optional<std::size_t> size_limit() const { return size_limit_; }
  const std::vector<EnsembleResult>& ensemble_log() const { return log_; }

  std::string statement_id(StatementRef s) const { return "pool-" + std::to_string(s); }
  std::string statement_text(StatementRef s) const { return pool_.entry(s).text; }

  double disc(AgentId i, StatementRef s) {
    if (i >= people_.size()) throw LookupError("unknown participant index " + std::to_string(i));
    const double u = adapter_.disc(people_[i], pool_.entry(s).text);
    transcript_.push({QueryKind::kDisc, 1, 0, s, statement_id(s)});
    return u;
  }

  StatementRef gen(std::span<const AgentId> agents, std::size_t r) {
    if (agents.empty()) throw PreconditionError("gen: agent set must be nonempty");
    if (size_limit_ && agents.size() > *size_limit_) {
      throw SizeLimitError("gen: |S| = " + std::to_string(agents.size()) +
                           " exceeds size limit t = " + std::to_string(*size_limit_));
    }
    if (r > agents.size()) throw OutOfRangeError("gen: r exceeds |S|");
    auto res = adapter_.gen_ensemble(people_, agents, r, pool_, rng_);
    const StatementRef s = res.statement;
    log_.push_back(std::move(res));
    transcript_.push({QueryKind::kGen, agents.size(), r, s, statement_id(s)});
    return s;
  }

  StatementRef fallback_statement() const {
    if (pool_.size() == 0) throw PreconditionError("fallback statement needs a nonempty pool");
    return 0;
  }

 private:
  std::vector<ParticipantRecord> people_;
  LlmAdapter& adapter_;
  StatementPool& pool_;
  Rng rng_;
  std::optional<std::size_t> size_limit_;
  Transcript transcript_;
  std::vector<EnsembleResult> log_;
};

}  // namespace gsc::llm

#endif  // GSC_LLM_ADAPTER_HPP_
