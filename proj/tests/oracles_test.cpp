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

#include <gtest/gtest.h>

#include <random>
#include <sstream>
#include <vector>

#include "gsc/instances.hpp"
#include "gsc/oracles.hpp"
#include "test_support.hpp"

namespace gsc {
namespace {

using Agents = std::vector<AgentId>;

static_assert(QueryOracle<ExactOracle>);
static_assert(QueryOracle<AdversarialOracle>);
static_assert(QueryOracle<BoxOracle>);
static_assert(InstanceOracle<ExactOracle>);

Instance line_points(std::vector<double> xs) {
  const std::size_t n = xs.size();
  return Instance(n, 1, {}, {}, PointSet(1, std::move(xs)));
}

TEST(Disc, Table1Lookups) {
  ExactOracle o(testing::table1());
  EXPECT_EQ(o.disc(0, 0), 1.0);  // agent 1, alpha
  EXPECT_EQ(o.disc(2, 0), 0.0);  // agent 3, alpha
  EXPECT_THROW(o.disc(3, 0), LookupError);
  EXPECT_THROW(o.disc(0, 9), LookupError);
}

TEST(Disc, BoxMembership) {
  Instance inst(1, 1, {{"unit", std::nullopt, Box{{0, 0}, {1, 1}}}}, {0.0},
                PointSet(2, {2, 2}));
  ExactOracle o(std::move(inst));
  EXPECT_EQ(o.disc(0, 0), 0.0);
}

TEST(GenExact, Table1) {
  ExactOracle o(testing::table1());
  EXPECT_EQ(o.gen(Agents{0, 1, 2}, 2), StatementRef{0});  // alpha, tie with alpha'
  EXPECT_EQ(o.gen(Agents{2}, 1), StatementRef{2});        // beta
  EXPECT_EQ(o.gen(Agents{0, 1, 2}, 0), StatementRef{0});  // every statement is +inf
}

TEST(GenExact, Table2) {
  ExactOracle o(testing::table2());
  EXPECT_EQ(o.gen(Agents{0, 1}, 2), StatementRef{2});  // beta
  EXPECT_EQ(o.gen(Agents{0, 1}, 1), StatementRef{0});  // alpha1
}

TEST(GenExact, Errors) {
  ExactOracle o(testing::table1(), 2);
  EXPECT_THROW(o.gen(Agents{0, 1, 2}, 1), SizeLimitError);
  EXPECT_THROW(o.gen(Agents{0, 1}, 3), OutOfRangeError);
  EXPECT_THROW(o.gen(Agents{}, 0), PreconditionError);
  EXPECT_THROW(o.gen(Agents{7}, 1), LookupError);
}

TEST(GenExactProperty, ReturnsAMaximiser) {
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    std::mt19937_64 rng(seed);
    const std::size_t n = 2 + seed % 7, m = 1 + seed % 6;
    Instance inst = testing::random_instance(seed, n, 1, m);
    ExactOracle o(inst);
    Agents s = iota_agents(n);
    std::shuffle(s.begin(), s.end(), rng);
    s.resize(1 + rng() % n);
    for (std::size_t r = 1; r <= s.size(); ++r) {
      const StatementRef got = o.gen(s, r);
      std::vector<double> v;
      for (AgentId i : s) v.push_back(inst.utility(i, got));
      EXPECT_EQ(testing::kth_largest_by_sort(v, r), testing::best_objective(inst, s, r));
    }
  }
}

TEST(Transcript, CountsAndCsv) {
  ExactOracle o(testing::table1());
  o.disc(0, 1);
  o.gen(Agents{0, 2}, 1);
  EXPECT_EQ(o.transcript().size(), 2u);
  EXPECT_EQ(o.transcript().count(QueryKind::kGen), 1u);
  EXPECT_EQ(o.transcript().max_gen_set_size(), 2u);
  std::ostringstream os;
  o.transcript().write_csv(os);
  EXPECT_EQ(os.str(),
            "query_index,kind,set_size,r,statement_id\n"
            "0,disc,1,,alpha'\n"
            "1,gen,2,1,alpha\n");
}

TEST(GenAdversarial, Prop32PairGetsFreshUnpopularStatement) {
  BuiltInstance b = build({ConstructionKind::kProp32, 8, 2, 0});
  AdversarialOracle o(std::move(b.instance), *b.adversarial);
  EXPECT_EQ(o.rules().size_limit, 2u);
  const StatementRef s = o.gen(Agents{5, 2}, 1);
  EXPECT_FALSE(o.is_popular(s));
  for (AgentId i = 0; i < 8; ++i) {
    EXPECT_EQ(o.instance().utility(i, s), (i == 2 || i == 5) ? 1.0 : 0.0);
  }
  // same query set: the same fabricated statement
  EXPECT_EQ(o.gen(Agents{2, 5}, 2), s);
  const StatementRef other = o.gen(Agents{0, 1}, 1);
  EXPECT_NE(other, s);
  EXPECT_EQ(o.fabricated_count(), 2u);
  EXPECT_THROW(o.gen(Agents{0, 1, 2}, 1), SizeLimitError);
}

// Brute-force tie-break reference: among popular statements and the
// fabricated candidate, maximise (objective, approvals in S), unpopular first.
TEST(GenAdversarial, NeverReturnsPopularOnTie) {
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    BuiltInstance b = build({ConstructionKind::kThm34, 96, 4, seed});
    const Instance popular_only = b.instance;
    AdversarialOracle o(std::move(b.instance), *b.adversarial);
    std::mt19937_64 rng(seed);
    Agents s = iota_agents(96);
    std::shuffle(s.begin(), s.end(), rng);
    s.resize(12);
    const StatementRef got = o.gen(s, 1);
    // the unpopular candidate covers all of S (support 12 = |S|), so it is
    // always at least as good as any popular statement
    EXPECT_FALSE(o.is_popular(got));
    std::size_t in_s = 0;
    for (AgentId i = 0; i < 96; ++i) in_s += o.instance().utility(i, got) > 0.0;
    EXPECT_EQ(in_s, 12u);  // padded to n/(2k)
    (void)popular_only;
  }
}

TEST(GenAdversarial, PaddedSupportIncludesQuerySet) {
  BuiltInstance b = build({ConstructionKind::kThm34, 8, 2, 3});
  EXPECT_EQ(b.adversarial->size_limit, 1u);
  EXPECT_EQ(b.adversarial->support_size, 2u);
  AdversarialOracle o(std::move(b.instance), *b.adversarial);
  const StatementRef s = o.gen(Agents{6}, 1);
  EXPECT_FALSE(o.is_popular(s));
  // support {6} padded with the lowest-index agent outside the query
  for (AgentId i = 0; i < 8; ++i) {
    EXPECT_EQ(o.instance().utility(i, s), (i == 0 || i == 6) ? 1.0 : 0.0);
  }
}

TEST(GenAdversarial, PopularWinsOnlyWhenStrictlyBetter) {
  // support cap 1 < |S|: the unpopular candidate reaches sigma_2 = 0 while a
  // popular statement approved by both agents reaches 1.
  Instance inst(4, 2, {{"beta-1", {}, {}}}, {1, 1, 0, 0});
  AdversarialOracle o(std::move(inst), AdversarialRules{2, 1, false});
  EXPECT_EQ(o.gen(Agents{0, 1}, 2), StatementRef{0});
  // at r = 1 both reach 1; approvals 2 vs 1 still favour the popular one
  EXPECT_EQ(o.gen(Agents{0, 1}, 1), StatementRef{0});
  // agents without approval: tie on (0, 0) vs (1, 1) -> unpopular
  EXPECT_FALSE(o.is_popular(o.gen(Agents{2, 3}, 1)));
}

TEST(GenBox, NearestNeighbourGrowth) {
  BoxOracle o(line_points({1, 2, 3, 10, 11}));
  const StatementRef a = o.gen(Agents{0, 1, 2, 3, 4}, 3);
  EXPECT_EQ(o.instance().statement(a).box, (Box{{1}, {3}}));
  const StatementRef b = o.gen(Agents{3, 4}, 2);
  EXPECT_EQ(o.instance().statement(b).box, (Box{{10}, {11}}));
  const StatementRef c = o.gen(Agents{0}, 1);
  EXPECT_EQ(o.instance().statement(c).box, (Box{{1}, {1}}));
  EXPECT_EQ(o.disc(1, a), 1.0);
  EXPECT_EQ(o.disc(3, a), 0.0);
  // identical boxes are not materialised twice
  EXPECT_EQ(o.gen(Agents{2, 1, 0}, 3), a);
}

TEST(GenBox, Errors) {
  BoxOracle o(line_points({1, 2, 3}), 2);
  EXPECT_THROW(o.gen(Agents{0, 1, 2}, 1), SizeLimitError);
  EXPECT_THROW(o.gen(Agents{0}, 2), OutOfRangeError);
  EXPECT_THROW(o.gen(Agents{0}, 0), OutOfRangeError);
  EXPECT_THROW(BoxOracle(testing::table1()), InvalidInstanceError);
}

TEST(GenBox, FallbackIsUnitBox) {
  BoxOracle o(line_points({0.5, 4}));
  const StatementRef f = o.fallback_statement();
  EXPECT_EQ(o.instance().statement(f).box, (Box{{0}, {1}}));
  EXPECT_EQ(o.disc(0, f), 1.0);
  EXPECT_EQ(o.disc(1, f), 0.0);
}

TEST(GenBoxProperty, ReturnedBoxCoversAtLeastRAgentsOfS) {
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    BuiltInstance b = build({ConstructionKind::kBox, 40, 2, seed});
    BoxOracle o(std::move(b.instance));
    std::mt19937_64 rng(seed);
    Agents s = iota_agents(40);
    std::shuffle(s.begin(), s.end(), rng);
    s.resize(1 + rng() % 40);
    const std::size_t r = 1 + rng() % s.size();
    const StatementRef got = o.gen(s, r);
    std::size_t covered = 0;
    for (AgentId i : s) covered += o.instance().utility(i, got) == 1.0;
    EXPECT_GE(covered, r);
    EXPECT_LE(o.transcript().max_gen_set_size(), 40u);
  }
}

}  // namespace
}  // namespace gsc
