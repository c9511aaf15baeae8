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

// Acceptance gate: one test per criterion, one output line per test.
//
//   PASS  1  greedy process satisfies BJR on 1000 random instances (0.41 s)
//
// Every tolerance and time limit is a named constant below. Criterion 10
// needs the published pilot data; point GSC_PILOT_DATA at a directory in the
// layout of docs/pilot_schema.md to run it.

#include <gtest/gtest.h>

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <map>
#include <random>
#include <sstream>
#include <string>

#include "cli.hpp"
#include "gsc/gsc.hpp"
#include "test_support.hpp"

namespace gsc {
namespace {

// Pinned limits.
constexpr std::size_t kSoundnessInstances = 1000;
constexpr double kSoundnessSeconds = 10.0;
constexpr double kTableSeconds = 1.0;
constexpr double kSubsetSimSeconds = 30.0;
constexpr std::size_t kImpossibilityTrials = 100;
constexpr double kThm34MinRate = 0.99;
constexpr std::size_t kPacTrials = 500;
constexpr double kPacExpectedRatio = 0.5;  // sqrt(50 / 200)
constexpr double kPacRatioFactor = 2.0;
constexpr double kPacSeconds = 60.0;
constexpr std::size_t kSamplingTrials = 200;
constexpr double kBoxMinSuccess = 0.99;
constexpr std::size_t kAssignmentMinCases = 200;
constexpr int kDiscUlps = 4;  // EXPECT_DOUBLE_EQ

using Clock = std::chrono::steady_clock;
double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

std::map<std::string, std::string>& notes() {
  static std::map<std::string, std::string> n;
  return n;
}
void note(const std::string& text) {
  notes()[::testing::UnitTest::GetInstance()->current_test_info()->name()] = text;
}

using Agents = std::vector<AgentId>;

TEST(Acceptance, C01_GreedySoundness) {
  const auto start = Clock::now();
  std::size_t checked = 0;
  for (std::uint64_t seed = 0; seed < kSoundnessInstances; ++seed) {
    std::mt19937_64 rng(derive_seed(1, "soundness", seed));
    const std::size_t n = 1 + rng() % 12;
    const std::size_t k = 1 + rng() % std::min<std::size_t>(4, n);
    const std::size_t m = 1 + rng() % 8;
    ExactOracle oracle(testing::random_instance(rng(), n, k, m));
    const ProcessRun run = greedy_bjr(oracle, n, k);
    const auto v = find_bjr_violation(oracle.instance(), run.slate, run.matching);
    EXPECT_FALSE(v.has_value()) << "seed " << seed;
    ++checked;
  }
  const double secs = seconds_since(start);
  EXPECT_LT(secs, kSoundnessSeconds);
  char buf[128];
  std::snprintf(buf, sizeof buf, "greedy process satisfies BJR on %zu random instances (%.2f s)",
                checked, secs);
  note(buf);
}

TEST(Acceptance, C02_TableFixtures) {
  const auto start = Clock::now();
  const Instance t1 = build({ConstructionKind::kTable1}).instance;
  auto slate = [](const Instance& inst, std::initializer_list<const char*> ids) {
    Slate s;
    for (const char* id : ids) s.members.push_back(*inst.find(id));
    return s;
  };
  const Slate jr_only = slate(t1, {"alpha", "beta", "beta'"});
  EXPECT_FALSE(check_jr(t1, jr_only).has_value());
  EXPECT_TRUE(check_bjr(t1, jr_only).violated());
  EXPECT_TRUE(check_bjr(t1, slate(t1, {"alpha", "alpha'", "beta"})).satisfied());

  const Instance t2 = build({ConstructionKind::kTable2}).instance;
  std::vector<std::string> satisfying;
  std::size_t multisets = 0;
  for (StatementRef a = 0; a < t2.num_statements(); ++a) {
    for (StatementRef b = a; b < t2.num_statements(); ++b) {
      ++multisets;
      if (check_bjr(t2, Slate{{a, b}}).satisfied()) {
        satisfying.push_back(t2.statement(a).id + "," + t2.statement(b).id);
      }
    }
  }
  EXPECT_EQ(multisets, 10u);
  EXPECT_EQ(satisfying, std::vector<std::string>{"alpha1,alpha2"});
  EXPECT_LT(seconds_since(start), kTableSeconds);
  note("table fixtures: JR-not-BJR slate, BJR slate, unique Table 2 slate {alpha1, alpha2}");
}

TEST(Acceptance, C03_QueryBudgets) {
  std::size_t runs = 0;
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    std::mt19937_64 rng(derive_seed(3, "budget", seed));
    const std::size_t n = 2 + rng() % 40;
    const std::size_t k = 1 + rng() % std::min<std::size_t>(4, n);
    ExactOracle oracle(testing::random_instance(rng(), n, k, 1 + rng() % 8));
    greedy_bjr(oracle, n, k);
    EXPECT_EQ(oracle.transcript().count(QueryKind::kGen), k);
    ++runs;
  }
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    std::mt19937_64 rng(derive_seed(3, "sampled", seed));
    ConstructionSpec spec{ConstructionKind::kBox, 300 + rng() % 700, 2, rng()};
    BuiltInstance built = build(spec);
    SamplingParams p;
    p.sample_size_override = 20 + rng() % 100;
    const auto sched = resolve_sampling(p, spec.n, spec.k);
    BoxOracle oracle(std::move(built.instance));
    sampled_bjr(oracle, spec.n, spec.k, p, rng());
    EXPECT_LE(oracle.transcript().max_gen_set_size(), sched.sample_size);
    ++runs;
  }
  note("query budgets: k generative queries (greedy), sets of size <= n_x (sampled), " +
       std::to_string(runs) + " runs");
}

TEST(Acceptance, C04_SubsetSimulation) {
  const auto start = Clock::now();
  std::size_t cases = 0;
  for (std::uint64_t seed = 0; seed < 120; ++seed) {
    std::mt19937_64 rng(derive_seed(4, "subsets", seed));
    const std::size_t n = 1 + rng() % 6, m = 1 + rng() % 6;
    const Instance inst = testing::random_instance(rng(), n, 1, m);
    ExactOracle exact(inst), simulated(inst);
    for (std::uint32_t mask = 1; mask < (1u << n); ++mask) {
      Agents s;
      for (AgentId i = 0; i < n; ++i) {
        if (mask & (1u << i)) s.push_back(i);
      }
      for (std::size_t r = 1; r <= std::min<std::size_t>(3, s.size()); ++r) {
        auto value = [&](StatementRef a) {
          std::vector<double> u;
          for (AgentId i : s) u.push_back(inst.utility(i, a));
          return rth_largest(u, r);
        };
        EXPECT_EQ(value(simulate_gen_by_subsets(simulated, s, r)), value(exact.gen(s, r)));
        ++cases;
      }
    }
  }
  EXPECT_LT(seconds_since(start), kSubsetSimSeconds);
  note("subset simulation matches gen on " + std::to_string(cases) + " (S, r) pairs");
}

TEST(Acceptance, C05_Prop32Demonstration) {
  const ConstructionSpec spec{ConstructionKind::kProp32, 8, 2, 0};
  ASSERT_EQ(build(spec).adversarial->size_limit, 2u);
  for (QueryPolicy policy : {QueryPolicy::kRandom, QueryPolicy::kSequential}) {
    const TrialReport r = impossibility_demo(spec, policy, kImpossibilityTrials, 5);
    EXPECT_EQ(r.trials(), kImpossibilityTrials);
    EXPECT_EQ(r.summary.rate, 1.0) << to_string(policy);
    for (const auto& o : r.outcomes) EXPECT_EQ(o.witness, "popular");
  }
  note("n=8, k=2, t=2: JR violated by 'popular' in 100/100 trials for both policies");
}

TEST(Acceptance, C06_Thm34Demonstration) {
  const ConstructionSpec spec{ConstructionKind::kThm34, 96, 4, 0};
  const BuiltInstance built = build(spec);
  ASSERT_EQ(built.adversarial->size_limit, 12u);
  ASSERT_LE(*built.query_budget, 3u);
  double worst = 1.0;
  for (QueryPolicy policy : {QueryPolicy::kRandom, QueryPolicy::kSequential}) {
    const TrialReport r = impossibility_demo(spec, policy, kImpossibilityTrials, 6);
    for (const auto& o : r.outcomes) EXPECT_LE(o.gen_queries, 3u);
    EXPECT_GE(r.summary.rate, kThm34MinRate) << to_string(policy);
    worst = std::min(worst, r.summary.rate);
  }
  char buf[128];
  std::snprintf(buf, sizeof buf, "n=96, k=4, t=12, <= 3 queries: JR violation rate %.2f", worst);
  note(buf);
}

TEST(Acceptance, C07_PacTrend) {
  const auto start = Clock::now();
  const Instance inst = testing::random_instance(7, 400, 2, 8);
  const TrialReport small = pac_experiment(inst, 50, kPacTrials, 70);
  const TrialReport large = pac_experiment(inst, 200, kPacTrials, 71);
  const double ratio = large.summary.median / small.summary.median;
  EXPECT_LT(large.summary.median, small.summary.median);
  EXPECT_GE(ratio, kPacExpectedRatio / kPacRatioFactor);
  EXPECT_LE(ratio, kPacExpectedRatio * kPacRatioFactor);
  EXPECT_LT(seconds_since(start), kPacSeconds);
  char buf[160];
  std::snprintf(buf, sizeof buf, "PAC medians m=50: %.4f, m=200: %.4f, ratio %.3f", small.summary.median,
                large.summary.median, ratio);
  note(buf);
}

TEST(Acceptance, C08_SampledSuccess) {
  SamplingParams clamp;
  clamp.vc_dim = 3;
  const ConstructionSpec finite{ConstructionKind::kRandom, 60, 3, 0};
  ASSERT_TRUE(resolve_sampling(clamp, 60, 3).clamped);
  const TrialReport a = sampled_bjr_success_rate(finite, clamp, kSamplingTrials, 81);
  EXPECT_EQ(a.summary.rate, 1.0);

  ConstructionSpec box{ConstructionKind::kBox, 2000, 2, 0};
  box.box.dims = 2;
  SamplingParams p;
  p.vc_dim = 4;
  p.sample_size_override = 400;
  ASSERT_FALSE(resolve_sampling(p, 2000, 2).clamped);
  const TrialReport b = sampled_bjr_success_rate(box, p, kSamplingTrials, 82);
  EXPECT_EQ(b.trials(), kSamplingTrials);
  EXPECT_GE(b.summary.rate, kBoxMinSuccess);
  char buf[160];
  std::snprintf(buf, sizeof buf, "sampled process success: clamp regime %.2f, boxes n=2000 %.3f",
                a.summary.rate, b.summary.rate);
  note(buf);
}

TEST(Acceptance, C09_BalancedAssignment) {
  std::mt19937_64 rng(9);
  std::size_t cases = 0;
  for (std::size_t n = 1; n <= 8; ++n) {
    for (std::size_t k = 1; k <= std::min<std::size_t>(4, n); ++k) {
      for (int rep = 0; rep < 8; ++rep) {
        std::vector<double> v(n * k);
        for (auto& x : v) x = static_cast<double>(rng() % 5);
        const llm::RatingMatrix m(n, k, v);
        double best = -1.0;
        testing::for_each_assignment(n, k, [&](const std::vector<std::size_t>& a) {
          if (!testing::balanced_by_count(a, n, k)) return;
          double total = 0.0;
          for (std::size_t i = 0; i < n; ++i) total += m.at(i, a[i]);
          best = std::max(best, total);
        });
        const auto res = llm::balanced_assignment(m);
        EXPECT_TRUE(is_balanced(res.matching, n, k));
        EXPECT_EQ(res.total, best) << "n=" << n << " k=" << k;
        ++cases;
      }
    }
  }
  EXPECT_GE(cases, kAssignmentMinCases);
  note("balanced assignment equals brute force on " + std::to_string(cases) + " instances");
}

TEST(Acceptance, C10_PilotReproduction) {
  const char* path = std::getenv("GSC_PILOT_DATA");
  if (!path || !*path) {
    note("pilot reproduction skipped: GSC_PILOT_DATA is not set (published dataset absent)");
    GTEST_SKIP() << "GSC_PILOT_DATA not set";
  }
  std::vector<std::string> args{"gsc", "assign", "--pilot", path};
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  ASSERT_EQ(cli::run_cli(static_cast<int>(argv.size()), argv.data(), out, err), 0) << err.str();
  const auto doc = Json::parse(out.str());
  ASSERT_EQ(doc["n"], 100);
  auto percent = [&](const char* label) {
    return static_cast<int>(std::lround(doc["level_fractions"][label].get<double>() * 100));
  };
  EXPECT_EQ(percent("perfectly"), 75);
  EXPECT_EQ(percent("mostly"), 18);
  EXPECT_EQ(percent("somewhat") + percent("poorly") + percent("not at all"), 7);
  EXPECT_EQ(doc["envious_agents"], 0);
  note("pilot reproduction: 75% perfectly, 18% mostly, 7% lower, no envious participant");
}

TEST(Acceptance, C11_MockedLlmAdapter) {
  using namespace llm;
  const auto prompts = load_prompt_library(GSC_PROMPT_DIR);
  const ParticipantRecord p{"p1", {{"What matters most?", "Privacy first."}}, {}, std::nullopt};
  auto disc = [&](const std::map<std::string, double>& probs) {
    ScriptedTransport t;
    LlmAdapter adapter(t, prompts);
    t.add(CompletionRequest{"gpt-4", adapter.approval_prompt(p, "Protect privacy."), 0.0, 1, 20},
          logprob_response(probs));
    return disc_llm(p, "Protect privacy.", adapter);
  };
  static_assert(kDiscUlps == 4, "EXPECT_DOUBLE_EQ compares within 4 ULPs");
  EXPECT_DOUBLE_EQ(disc({{"3", 0.5}, {"4", 0.5}}), 3.5);
  EXPECT_DOUBLE_EQ(disc({{"2", 0.2}, {"3", 0.5}, {"4", 0.3}}), 3.1);
  EXPECT_DOUBLE_EQ(disc({{"1", 0.1}, {"2", 0.3}, {"Sure", 0.6}}), 1.75);

  const std::filesystem::path dir = std::filesystem::path(GSC_FIXTURE_DIR) / "recorded_round";
  auto t = ScriptedTransport::from_file((dir / "exchanges.jsonl").string());
  LlmAdapter adapter(t, prompts);
  StatementPool pool;
  pool.add("The most important rule for chatbot personalization is to protect user privacy.",
           "initial-cluster");
  pool.add("The most important rule for chatbot personalization is to let users opt out.",
           "initial-cluster");
  const auto people = ingest_pilot_data(dir / "participants.jsonl").participants;
  const auto group = iota_agents(people.size());
  Rng rng(2026);
  const std::string chosen = gen_llm_ensemble(people, group, 4, pool, adapter, rng);
  EXPECT_EQ(chosen, "The most important rule for chatbot personalization is rule 937780.");
  // The choice is the sigma_4 argmax over the cached ratings.
  ExtendedReal best = -1.0;
  std::string argmax;
  for (const auto& e : pool.snapshot()) {
    std::vector<double> u;
    for (const auto& person : people) u.push_back(adapter.disc(person, e.text));
    const ExtendedReal v = rth_largest(u, 4);
    if (v > best) {
      best = v;
      argmax = e.text;
    }
  }
  EXPECT_EQ(chosen, argmax);
  note("scripted disc 3.5 / 3.1 / 1.75 and recorded-round ensemble replay");
}

// One line per criterion; failure details go to stderr.
class CriterionPrinter : public ::testing::EmptyTestEventListener {
  void OnTestPartResult(const ::testing::TestPartResult& r) override {
    if (r.failed()) {
      std::cerr << r.file_name() << ":" << r.line_number() << ": " << r.summary() << "\n";
    }
  }
  void OnTestEnd(const ::testing::TestInfo& info) override {
    const std::string name = info.name();
    const std::string number = name.substr(1, 2);
    const auto* result = info.result();
    const char* verdict = result->Skipped() ? "SKIP" : result->Failed() ? "FAIL" : "PASS";
    const auto it = notes().find(name);
    std::cout << verdict << "  " << (number[0] == '0' ? number.substr(1) : number) << "  "
              << (it == notes().end() ? name : it->second) << std::endl;
  }
};

}  // namespace
}  // namespace gsc

int main(int argc, char** argv) {
  ::testing::InitGoogleTest(&argc, argv);
  auto& listeners = ::testing::UnitTest::GetInstance()->listeners();
  delete listeners.Release(listeners.default_result_printer());
  listeners.Append(new gsc::CriterionPrinter);
  return RUN_ALL_TESTS();
}
