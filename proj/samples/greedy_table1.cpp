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

// Greedy process on the three-agent example with two pairs of statements.
// Prints each round and checks the slate against JR and BJR.

#include <cstdio>

#include "gsc/gsc.hpp"

int main() {
  using namespace gsc;
  ExactOracle oracle(build({ConstructionKind::kTable1}).instance);
  const ProcessRun run = greedy_bjr(oracle, 3, 3);

  for (const auto& r : run.rounds) {
    std::printf("round %zu: %-7s quota %zu, removes", r.round, r.statement_id.c_str(), r.quota);
    for (AgentId i : r.removed) std::printf(" %zu", i + 1);
    std::printf("\n");
  }

  const Instance& inst = oracle.instance();
  const BjrVerdict bjr = check_bjr(inst, run.slate, run.matching);
  const bool jr = !check_jr(inst, run.slate);
  std::printf("BJR %s, JR %s, %zu generative queries\n", to_string(bjr.kind),
              jr ? "satisfied" : "violated", oracle.transcript().count(QueryKind::kGen));

  // The slate {alpha, beta, beta'} is JR but not BJR: agents 1 and 2 share
  // one alpha-slot, so one of them is matched to a beta.
  const Slate other{{*inst.find("alpha"), *inst.find("beta"), *inst.find("beta'")}};
  const BjrVerdict v = check_bjr(inst, other);
  std::printf("{alpha, beta, beta'}: JR %s, BJR %s",
              check_jr(inst, other) ? "violated" : "satisfied", to_string(v.kind));
  if (v.violation) std::printf(" (witness %s)", v.violation->statement_label(inst).c_str());
  std::printf("\n");
  return bjr.satisfied() && jr ? 0 : 1;
}
