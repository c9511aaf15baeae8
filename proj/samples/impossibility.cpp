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

// Size-limited generative queries against an adversarial oracle. With
// queries of at most t agents no process can guarantee JR: the oracle keeps
// answering with statements that only the queried agents like.

#include <cstdio>

#include "gsc/gsc.hpp"

namespace {

void demo(const gsc::ConstructionSpec& spec, std::size_t trials) {
  using namespace gsc;
  const BuiltInstance built = build(spec);
  std::printf("%s n=%zu k=%zu t=%zu", to_string(spec.kind), spec.n, spec.k,
              built.adversarial->size_limit);
  if (built.query_budget) std::printf(" budget=%zu", *built.query_budget);
  std::printf("\n");
  for (QueryPolicy policy : {QueryPolicy::kRandom, QueryPolicy::kSequential}) {
    const TrialReport r = impossibility_demo(spec, policy, trials, 2026);
    std::printf("  %-10s JR violated in %5.1f%% of %zu runs (mean query size %.1f)\n",
                to_string(policy), 100.0 * r.summary.rate, r.trials(), r.summary.mean_query_size);
  }
}

}  // namespace

int main() {
  demo({gsc::ConstructionKind::kProp32, 8, 2, 0}, 100);
  demo({gsc::ConstructionKind::kThm34, 96, 4, 0}, 100);
  return 0;
}
