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

#ifndef GSC_INSTANCES_HPP_
#define GSC_INSTANCES_HPP_

#include <cmath>
#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "gsc/core.hpp"
#include "gsc/oracles.hpp"
#include "gsc/random.hpp"

namespace gsc {

struct InvalidSpecError : Error {
  using Error::Error;
};

enum class ConstructionKind { kTable1, kTable2, kProp32, kThm34, kBox, kRandom };
enum class OracleKind { kExact, kAdversarial, kBox, kLlm };

inline const char* to_string(ConstructionKind kind) {
  switch (kind) {
    case ConstructionKind::kTable1: return "table1";
    case ConstructionKind::kTable2: return "table2";
    case ConstructionKind::kProp32: return "prop32";
    case ConstructionKind::kThm34: return "thm34";
    case ConstructionKind::kBox: return "box";
    case ConstructionKind::kRandom: return "random";
  }
  return "random";
}

inline ConstructionKind parse_construction_kind(const std::string& s) {
  for (auto k : {ConstructionKind::kTable1, ConstructionKind::kTable2,
                 ConstructionKind::kProp32, ConstructionKind::kThm34,
                 ConstructionKind::kBox, ConstructionKind::kRandom}) {
    if (s == to_string(k)) return k;
  }
  throw InvalidSpecError("unknown construction kind '" + s + "'");
}

inline const char* to_string(OracleKind kind) {
  switch (kind) {
    case OracleKind::kExact: return "exact";
    case OracleKind::kAdversarial: return "adversarial";
    case OracleKind::kBox: return "box";
    case OracleKind::kLlm: return "llm";
  }
  return "exact";
}

inline OracleKind parse_oracle_kind(const std::string& s) {
  for (auto k : {OracleKind::kExact, OracleKind::kAdversarial, OracleKind::kBox,
                 OracleKind::kLlm}) {
    if (s == to_string(k)) return k;
  }
  throw InvalidSpecError("unknown oracle kind '" + s + "'");
}

// Agent points for box spaces: each agent joins one of `clusters` axis-aligned
// clusters uniformly at random; cluster centres are uniform in [0, extent]^d
// and members are uniform within +-half_width of the centre.
struct BoxClusterParams {
  std::size_t dims = 2;
  std::size_t clusters = 3;
  double extent = 10.0;
  double half_width = 1.0;
};

struct ConstructionSpec {
  ConstructionKind kind = ConstructionKind::kRandom;
  std::size_t n = 0;  // 0: the construction's default (tables only)
  std::size_t k = 0;
  std::uint64_t seed = 0;
  // random
  std::size_t statements = 8;
  std::vector<double> value_set = {0, 1, 2, 3, 4};
  // box
  BoxClusterParams box;
};

struct BuiltInstance {
  Instance instance;
  OracleKind oracle = OracleKind::kExact;
  std::optional<AdversarialRules> adversarial;
  // Largest number of generative queries for which the construction's
  // impossibility bound applies (thm34 only).
  std::optional<std::size_t> query_budget;
  std::vector<std::size_t> colors;  // thm34: colour of each agent, 1-based
};

// Impossibility parameters, exposed for callers and tests.
inline std::size_t prop32_size_limit(std::size_t n, std::size_t k) {
  return n * (k - 1) / (k * k);  // (n/k)(1 - 1/k)
}
inline double thm34_query_bound(std::size_t n, std::size_t k) {
  const double kd = static_cast<double>(k);
  return 2.0 / kd * std::exp(static_cast<double>(n) / (12.0 * kd));
}
// Largest integer strictly below the bound.
inline std::size_t thm34_query_budget(std::size_t n, std::size_t k) {
  return static_cast<std::size_t>(std::ceil(thm34_query_bound(n, k))) - 1;
}

namespace detail {

inline Instance fixed_table(std::size_t n, std::size_t k, std::vector<std::string> ids,
                            std::vector<double> rows) {
  std::vector<Statement> st;
  for (auto& id : ids) st.push_back({std::move(id), std::nullopt, std::nullopt});
  return Instance(n, k, std::move(st), std::move(rows));
}

inline void expect_size(const ConstructionSpec& spec, std::size_t n, std::size_t k) {
  if ((spec.n != 0 && spec.n != n) || (spec.k != 0 && spec.k != k)) {
    throw InvalidSpecError(std::string(to_string(spec.kind)) + " is fixed at n = " +
                           std::to_string(n) + ", k = " + std::to_string(k));
  }
}

}  // namespace detail

inline BuiltInstance build(const ConstructionSpec& spec) {
  const std::size_t n = spec.n;
  const std::size_t k = spec.k;
  auto need_nk = [&] {
    if (n == 0 || k == 0 || k > n) {
      throw InvalidSpecError(std::string(to_string(spec.kind)) +
                             ": need 1 <= k <= n (got n = " + std::to_string(n) +
                             ", k = " + std::to_string(k) + ")");
    }
  };
  Rng rng(spec.seed);

  switch (spec.kind) {
    case ConstructionKind::kTable1:
      detail::expect_size(spec, 3, 3);
      return {detail::fixed_table(3, 3, {"alpha", "alpha'", "beta", "beta'"},
                                  {1, 1, 0, 0,  //
                                   1, 1, 0, 0,  //
                                   0, 0, 1, 1}),
              OracleKind::kExact, std::nullopt, std::nullopt, {}};

    case ConstructionKind::kTable2:
      detail::expect_size(spec, 2, 2);
      return {detail::fixed_table(2, 2, {"alpha1", "alpha2", "beta", "beta'"},
                                  {3, 0, 2, 2,  //
                                   0, 3, 2, 2}),
              OracleKind::kExact, std::nullopt, std::nullopt, {}};

    case ConstructionKind::kProp32: {
      need_nk();
      if (k < 2) throw InvalidSpecError("prop32: k must be at least 2 so that t > 0");
      if (n % (k * k) != 0) {
        throw InvalidSpecError("prop32: n must be a multiple of k^2 (n = " +
                               std::to_string(n) + ", k^2 = " + std::to_string(k * k) + ")");
      }
      const std::size_t t = prop32_size_limit(n, k);
      Instance inst(n, k, {{"popular", std::nullopt, std::nullopt}},
                    std::vector<double>(n, 1.0));
      return {std::move(inst), OracleKind::kAdversarial,
              AdversarialRules{t, t, false}, std::nullopt, {}};
    }

    case ConstructionKind::kThm34: {
      need_nk();
      if (k % 2 != 0) throw InvalidSpecError("thm34: k must be even");
      if (n % 8 != 0) throw InvalidSpecError("thm34: n must be a multiple of 8");
      if (n % (2 * k) != 0) {
        throw InvalidSpecError("thm34: n must be a multiple of 2k so that n/(2k) is integral");
      }
      const std::size_t colors = k / 2;
      std::uniform_int_distribution<std::size_t> pick(1, colors);
      std::vector<std::size_t> color(n);
      for (auto& c : color) c = pick(rng);
      std::vector<Statement> st;
      for (std::size_t c = 1; c <= colors; ++c) {
        st.push_back({"beta-" + std::to_string(c), std::nullopt, std::nullopt});
      }
      std::vector<double> rows(n * colors, 0.0);
      for (AgentId i = 0; i < n; ++i) rows[i * colors + (color[i] - 1)] = 1.0;
      Instance inst(n, k, std::move(st), std::move(rows));
      return {std::move(inst), OracleKind::kAdversarial,
              AdversarialRules{n / 8, n / (2 * k), true}, thm34_query_budget(n, k),
              std::move(color)};
    }

    case ConstructionKind::kBox: {
      need_nk();
      const auto& bp = spec.box;
      if (bp.dims == 0 || bp.clusters == 0) {
        throw InvalidSpecError("box: dims and clusters must be positive");
      }
      std::uniform_real_distribution<double> centre(0.0, bp.extent);
      std::uniform_real_distribution<double> offset(-bp.half_width, bp.half_width);
      std::uniform_int_distribution<std::size_t> which(0, bp.clusters - 1);
      std::vector<double> centres(bp.clusters * bp.dims);
      for (auto& c : centres) c = centre(rng);
      std::vector<double> coords(n * bp.dims);
      for (AgentId i = 0; i < n; ++i) {
        const std::size_t c = which(rng);
        for (std::size_t d = 0; d < bp.dims; ++d) {
          coords[i * bp.dims + d] = centres[c * bp.dims + d] + offset(rng);
        }
      }
      Instance inst(n, k, {}, {}, PointSet(bp.dims, std::move(coords)));
      return {std::move(inst), OracleKind::kBox, std::nullopt, std::nullopt, {}};
    }

    case ConstructionKind::kRandom: {
      need_nk();
      if (spec.statements == 0) throw InvalidSpecError("random: need at least one statement");
      if (spec.value_set.empty()) throw InvalidSpecError("random: value set is empty");
      std::uniform_int_distribution<std::size_t> pick(0, spec.value_set.size() - 1);
      std::vector<Statement> st;
      for (std::size_t s = 1; s <= spec.statements; ++s) {
        st.push_back({"s" + std::to_string(s), std::nullopt, std::nullopt});
      }
      std::vector<double> rows(n * spec.statements);
      for (auto& u : rows) u = spec.value_set[pick(rng)];
      return {Instance(n, k, std::move(st), std::move(rows)), OracleKind::kExact,
              std::nullopt, std::nullopt, {}};
    }
  }
  throw InvalidSpecError("unhandled construction kind");
}

// ceil(log2 |U|) for finite universes, 2 * dims for box spaces.
inline std::size_t vc_dim_upper_bound(const Instance& instance) {
  if (instance.is_box_space()) return 2 * instance.points()->dims();
  std::size_t m = instance.num_statements();
  std::size_t d = 0;
  while ((std::size_t{1} << d) < m) ++d;
  return d;
}

}  // namespace gsc

#endif  // GSC_INSTANCES_HPP_
