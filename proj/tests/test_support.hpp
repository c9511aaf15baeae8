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

// Seeded generators and brute-force reference implementations shared by the
// test binaries. Nothing here calls into the code under test except to build
// inputs.

#ifndef GSC_TESTS_TEST_SUPPORT_HPP_
#define GSC_TESTS_TEST_SUPPORT_HPP_

#include <algorithm>
#include <cstdint>
#include <functional>
#include <limits>
#include <random>
#include <string>
#include <vector>

#include "gsc/core.hpp"

namespace gsc::testing {

inline Instance random_instance(std::uint64_t seed, std::size_t n, std::size_t k,
                                std::size_t statements, int max_value = 4) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> value(0, max_value);
  std::vector<Statement> st;
  for (std::size_t s = 0; s < statements; ++s) {
    st.push_back({"s" + std::to_string(s + 1), std::nullopt, std::nullopt});
  }
  std::vector<double> rows(n * statements);
  for (auto& u : rows) u = value(rng);
  return Instance(n, k, std::move(st), std::move(rows));
}

// Table fixtures written out from the published matrices, independent of the
// builders in instances.hpp.
inline Instance table1() {
  return Instance(3, 3,
                  {{"alpha", {}, {}}, {"alpha'", {}, {}}, {"beta", {}, {}}, {"beta'", {}, {}}},
                  {1, 1, 0, 0, 1, 1, 0, 0, 0, 0, 1, 1});
}
inline Instance table2() {
  return Instance(2, 2,
                  {{"alpha1", {}, {}}, {"alpha2", {}, {}}, {"beta", {}, {}}, {"beta'", {}, {}}},
                  {3, 0, 2, 2, 0, 3, 2, 2});
}

inline double kth_largest_by_sort(std::vector<double> v, std::size_t r) {
  std::sort(v.begin(), v.end(), std::greater<>());
  return v[r - 1];
}

// max over statements of the r-th largest utility over `agents` (r >= 1).
inline double best_objective(const Instance& inst, const std::vector<AgentId>& agents,
                             std::size_t r) {
  double best = -std::numeric_limits<double>::infinity();
  for (StatementRef s = 0; s < inst.num_statements(); ++s) {
    std::vector<double> v;
    for (AgentId i : agents) v.push_back(inst.utility(i, s));
    best = std::max(best, kth_largest_by_sort(v, r));
  }
  return best;
}

// Every assignment of n agents to k slots (k^n of them).
inline void for_each_assignment(std::size_t n, std::size_t k,
                                const std::function<void(const std::vector<std::size_t>&)>& f) {
  std::vector<std::size_t> a(n, 0);
  while (true) {
    f(a);
    std::size_t i = 0;
    while (i < n && ++a[i] == k) a[i++] = 0;
    if (i == n) return;
  }
}

inline bool balanced_by_count(const std::vector<std::size_t>& a, std::size_t n, std::size_t k) {
  std::vector<std::size_t> load(k, 0);
  for (auto s : a) ++load[s];
  for (auto l : load) {
    if (l != n / k && l != (n + k - 1) / k) return false;
  }
  return true;
}

// BJR violation search over a fine threshold grid instead of observed
// utility values: theta in {min-1, min-1+step, ..., max+1}.
inline bool grid_violation(const Instance& inst, const std::vector<double>& level, double step) {
  const std::size_t n = inst.n(), k = inst.k();
  for (StatementRef a = 0; a < inst.num_statements(); ++a) {
    for (double theta = -1.0; theta <= 5.0 + 1e-9; theta += step) {
      std::size_t count = 0;
      for (AgentId i = 0; i < n; ++i) {
        if (inst.utility(i, a) >= theta && level[i] < theta) ++count;
      }
      if (k * count >= n) return true;
    }
  }
  return false;
}

}  // namespace gsc::testing

#endif  // GSC_TESTS_TEST_SUPPORT_HPP_
