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

#include <algorithm>
#include <random>
#include <vector>

#include "gsc/core.hpp"
#include "gsc/random.hpp"
#include "test_support.hpp"

namespace gsc {
namespace {

TEST(RthLargest, CountsMultiplicity) {
  const std::vector<double> a{1, 1, 0};
  EXPECT_EQ(rth_largest(a, 2), ExtendedReal(1.0));
  const std::vector<double> b{0, 0, 1};
  EXPECT_EQ(rth_largest(b, 2), ExtendedReal(0.0));
  EXPECT_EQ(rth_largest(b, 1), ExtendedReal(1.0));
  EXPECT_EQ(rth_largest(b, 3), ExtendedReal(0.0));
}

TEST(RthLargest, ZeroIsInfinity) {
  const std::vector<double> v{3, -2, 7};
  const ExtendedReal top = rth_largest(v, 0);
  EXPECT_TRUE(top.is_infinite());
  EXPECT_GT(top, ExtendedReal(1e308));
  const std::vector<double> empty;
  EXPECT_TRUE(rth_largest(empty, 0).is_infinite());
}

TEST(RthLargest, RejectsRBeyondSize) {
  const std::vector<double> v{1, 2};
  EXPECT_THROW(rth_largest(v, 3), OutOfRangeError);
}

TEST(ExtendedReal, InfinityDominatesFiniteValues) {
  EXPECT_LT(ExtendedReal(-1.0), ExtendedReal::infinity());
  EXPECT_EQ(ExtendedReal::infinity(), ExtendedReal::infinity());
  EXPECT_FALSE(ExtendedReal::infinity() < ExtendedReal(1e300));
  EXPECT_EQ(ExtendedReal::infinity().value(), std::numeric_limits<double>::infinity());
}

TEST(RthLargestProperty, PermutationInvariantAndMonotone) {
  std::mt19937_64 rng(11);
  std::uniform_int_distribution<int> len(1, 12), val(-5, 5);
  for (int trial = 0; trial < 500; ++trial) {
    std::vector<double> v(static_cast<std::size_t>(len(rng)));
    for (auto& x : v) x = val(rng);
    std::vector<double> shuffled = v;
    std::shuffle(shuffled.begin(), shuffled.end(), rng);
    for (std::size_t r = 1; r <= v.size(); ++r) {
      EXPECT_EQ(rth_largest(v, r), ExtendedReal(testing::kth_largest_by_sort(v, r)));
      EXPECT_EQ(rth_largest(v, r), rth_largest(shuffled, r));
      EXPECT_GE(rth_largest(v, r - 1), rth_largest(v, r));
    }
  }
}

TEST(BalanceQuotas, Examples) {
  EXPECT_EQ(balance_quotas(3, 3), (std::vector<std::size_t>{1, 1, 1}));
  EXPECT_EQ(balance_quotas(7, 3), (std::vector<std::size_t>{3, 2, 2}));
  EXPECT_EQ(balance_quotas(6, 3), (std::vector<std::size_t>{2, 2, 2}));
  EXPECT_EQ(balance_quotas(1, 1), (std::vector<std::size_t>{1}));
}

TEST(BalanceQuotas, RejectsKAboveN) {
  EXPECT_THROW(balance_quotas(2, 3), InvalidInstanceError);
  EXPECT_THROW(balance_quotas(3, 0), InvalidInstanceError);
}

TEST(BalanceQuotasProperty, SumsToNAndDifferByAtMostOne) {
  for (std::size_t n = 1; n <= 60; ++n) {
    for (std::size_t k = 1; k <= n; ++k) {
      const auto q = balance_quotas(n, k);
      ASSERT_EQ(q.size(), k);
      std::size_t sum = 0;
      for (auto x : q) sum += x;
      EXPECT_EQ(sum, n);
      const auto [lo, hi] = std::minmax_element(q.begin(), q.end());
      EXPECT_LE(*hi - *lo, 1u);
      EXPECT_TRUE(std::is_sorted(q.rbegin(), q.rend()));
    }
  }
}

TEST(IsBalanced, Examples) {
  EXPECT_TRUE(is_balanced({{0, 1, 2}}, 3, 3));
  EXPECT_FALSE(is_balanced({{0, 0, 1}}, 3, 3));
  EXPECT_TRUE(is_balanced({{0, 0, 0, 1, 1, 2, 2}}, 7, 3));
  EXPECT_FALSE(is_balanced({{0, 0, 0, 0, 1, 2, 2}}, 7, 3));
}

TEST(IsBalanced, MalformedMatchings) {
  EXPECT_THROW(is_balanced({{0, 1}}, 3, 3), MalformedMatchingError);
  EXPECT_THROW(is_balanced({{0, 1, 3}}, 3, 3), MalformedMatchingError);
}

TEST(IsBalancedProperty, QuotaGroupingBalancedAndSkewedNot) {
  std::mt19937_64 rng(5);
  for (std::size_t n = 2; n <= 20; ++n) {
    for (std::size_t k = 1; k <= n; ++k) {
      const auto q = balance_quotas(n, k);
      BalancedMatching m;
      for (std::size_t slot = 0; slot < k; ++slot) m.slot_of.insert(m.slot_of.end(), q[slot], slot);
      std::shuffle(m.slot_of.begin(), m.slot_of.end(), rng);
      EXPECT_TRUE(is_balanced(m, n, k));
      if (k >= 2 && q[k - 1] >= 1) {
        // move one agent from the last slot to the first: sizes now differ by >= 2
        BalancedMatching skew;
        for (std::size_t slot = 0; slot < k; ++slot) {
          skew.slot_of.insert(skew.slot_of.end(), q[slot], slot);
        }
        skew.slot_of.back() = 0;
        EXPECT_FALSE(is_balanced(skew, n, k));
      }
    }
  }
}

TEST(DeservesRepresentation, ExactIntegerTest) {
  EXPECT_TRUE(deserves_representation(1, 3, 3));
  EXPECT_TRUE(deserves_representation(4, 8, 2));
  EXPECT_FALSE(deserves_representation(3, 8, 2));
  EXPECT_TRUE(deserves_representation(3, 7, 3));  // 9 >= 7
  EXPECT_FALSE(deserves_representation(2, 7, 3));
}

TEST(Instance, ValidatesShape) {
  EXPECT_THROW(Instance(2, 1, {{"a", {}, {}}}, {1.0}), InvalidInstanceError);
  EXPECT_THROW(Instance(2, 3, {{"a", {}, {}}}, {1.0, 2.0}), InvalidInstanceError);
  EXPECT_THROW(Instance(1, 1, {{"a", {}, {}}, {"a", {}, {}}}, {1.0, 2.0}),
               InvalidInstanceError);
  EXPECT_THROW(Instance(1, 1, {{"a", {}, {}}}, {std::numeric_limits<double>::quiet_NaN()}),
               InvalidInstanceError);
}

TEST(Instance, StoresUtilitiesRowMajor) {
  const Instance t1 = testing::table1();
  EXPECT_EQ(t1.n(), 3u);
  EXPECT_EQ(t1.num_statements(), 4u);
  EXPECT_EQ(t1.utility(0, 0), 1.0);
  EXPECT_EQ(t1.utility(2, 0), 0.0);
  EXPECT_EQ(t1.utility(2, 3), 1.0);
  EXPECT_EQ(t1.row_major_utilities(),
            (std::vector<double>{1, 1, 0, 0, 1, 1, 0, 0, 0, 0, 1, 1}));
  EXPECT_EQ(t1.find("beta"), StatementRef{2});
  EXPECT_FALSE(t1.find("gamma"));
  EXPECT_THROW(t1.utility(3, 0), LookupError);
  EXPECT_THROW(t1.statement(4), LookupError);
}

TEST(Instance, AddStatementChecksColumn) {
  Instance t = testing::table1();
  EXPECT_EQ(t.add_statement({"gamma", {}, {}}, {0, 1, 0}), StatementRef{4});
  EXPECT_THROW(t.add_statement({"delta", {}, {}}, {0, 1}), InvalidInstanceError);
  EXPECT_THROW(t.add_statement({"gamma", {}, {}}, {0, 1, 0}), InvalidInstanceError);
}

TEST(PointSet, BoundingBoxAndContainment) {
  const PointSet pts(2, {0, 0, 2, 1, 1, 3});
  const std::vector<AgentId> all{0, 1, 2};
  const Box b = pts.bounding_box(all);
  EXPECT_EQ(b.lo, (std::vector<double>{0, 0}));
  EXPECT_EQ(b.hi, (std::vector<double>{2, 3}));
  const std::vector<double> inside{2, 3}, outside{2.5, 0};
  EXPECT_TRUE(b.contains(inside));
  EXPECT_FALSE(b.contains(outside));
}

TEST(TopAgents, TiesGoToLowerIndex) {
  const std::vector<AgentId> pool{4, 1, 3, 2};
  const std::vector<double> u{0, 5, 5, 1, 5};
  const auto top = top_agents(pool, 2, [&](AgentId i) { return u[i]; });
  EXPECT_EQ(top, (std::vector<AgentId>{1, 2}));
}

TEST(Random, DerivedSeedsAreStableAndDistinct) {
  EXPECT_EQ(derive_seed(7, "instance", 3), derive_seed(7, "instance", 3));
  EXPECT_NE(derive_seed(7, "instance", 3), derive_seed(7, "instance", 4));
  EXPECT_NE(derive_seed(7, "instance", 3), derive_seed(7, "process", 3));
  EXPECT_NE(derive_seed(7, "instance", 3), derive_seed(8, "instance", 3));
  EXPECT_EQ(fnv1a64(""), 0xcbf29ce484222325ULL);
  EXPECT_EQ(fnv1a64("a"), 0xaf63dc4c8601ec8cULL);
}

TEST(Random, SampleWithoutReplacementIsSortedSubset) {
  Rng rng(3);
  const auto everyone = iota_agents(50);
  for (int t = 0; t < 100; ++t) {
    const auto s = sample_without_replacement(everyone, 20, rng);
    ASSERT_EQ(s.size(), 20u);
    EXPECT_TRUE(std::is_sorted(s.begin(), s.end()));
    EXPECT_EQ(std::adjacent_find(s.begin(), s.end()), s.end());
    EXPECT_LT(s.back(), 50u);
  }
  EXPECT_THROW(sample_without_replacement(everyone, 51, rng), PreconditionError);
}

}  // namespace
}  // namespace gsc
