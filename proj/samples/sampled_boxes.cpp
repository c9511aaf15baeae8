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

// Sampling-based process on clustered points in the plane, where statements
// are axis-parallel boxes. Each round queries only the agents in a random
// sample; the run's own matching is then checked for BJR.
//
//   sample_sampled_boxes [n] [k] [sample size] [seed]

#include <cstdio>
#include <cstdlib>

#include "gsc/gsc.hpp"

int main(int argc, char** argv) {
  using namespace gsc;
  const std::size_t n = argc > 1 ? std::strtoul(argv[1], nullptr, 10) : 2000;
  const std::size_t k = argc > 2 ? std::strtoul(argv[2], nullptr, 10) : 2;
  const std::size_t nx = argc > 3 ? std::strtoul(argv[3], nullptr, 10) : 400;
  const std::uint64_t seed = argc > 4 ? std::strtoull(argv[4], nullptr, 10) : 1;

  ConstructionSpec spec{ConstructionKind::kBox, n, k, derive_seed(seed, "instance")};
  BuiltInstance built = build(spec);
  SamplingParams params;
  params.vc_dim = vc_dim_upper_bound(built.instance);
  params.sample_size_override = nx;

  try {
    const SamplingSchedule sched = resolve_sampling(params, n, k);
    std::printf("n=%zu k=%zu  n_x=%zu%s  eps=%.4f  r_bar_x=%.2f  r_bar=%.2f\n", n, k,
                sched.sample_size, sched.clamped ? " (clamped)" : "", sched.epsilon,
                sched.r_bar_x, sched.r_bar);

    BoxOracle oracle(std::move(built.instance), sched.sample_size);
    const ProcessRun run = sampled_bjr(oracle, n, k, params, derive_seed(seed, "process"));
    for (const auto& r : run.rounds) {
      std::printf("round %zu: |Y|=%zu gen_r=%zu theta=%.3f removes %zu%s\n", r.round,
                  r.sample_size.value_or(0), r.gen_r.value_or(0), r.theta.value_or(0.0),
                  r.removed.size(), r.fallback ? " (fallback)" : "");
    }
    std::printf("%zu leftover agents placed in spare slots\n", run.leftover.size());
    const auto v = find_bjr_violation(oracle.instance(), run.slate, run.matching);
    std::printf("largest query %zu agents; BJR %s\n", oracle.transcript().max_gen_set_size(),
                v ? "violated" : "satisfied");
    return v ? 1 : 0;
  } catch (const Error& e) {
    std::fprintf(stderr, "%s\n", e.what());
    return 2;
  }
}
