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

#ifndef GSC_RANDOM_HPP_
#define GSC_RANDOM_HPP_

#include <algorithm>
#include <cstdint>
#include <iomanip>
#include <random>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "gsc/core.hpp"

namespace gsc {

using Rng = std::mt19937_64;

// FNV-1a, 64 bit. Stable across platforms, unlike std::hash.
constexpr std::uint64_t fnv1a64(std::string_view bytes,
                                std::uint64_t h = 0xcbf29ce484222325ULL) {
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

inline std::string hex64(std::uint64_t v) {
  std::ostringstream os;
  os << std::hex << std::setw(16) << std::setfill('0') << v;
  return os.str();
}

constexpr std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// Child seed for a labelled subcomponent of a run.
inline std::uint64_t derive_seed(std::uint64_t master, std::string_view label,
                                 std::uint64_t index = 0) {
  return splitmix64(splitmix64(master ^ fnv1a64(label)) + index);
}

// Uniform sample without replacement, returned in ascending order.
inline std::vector<AgentId> sample_without_replacement(std::span<const AgentId> population,
                                                       std::size_t m, Rng& rng) {
  if (m > population.size()) {
    throw PreconditionError("sample size " + std::to_string(m) +
                            " exceeds population " + std::to_string(population.size()));
  }
  std::vector<AgentId> out;
  out.reserve(m);
  std::sample(population.begin(), population.end(), std::back_inserter(out), m, rng);
  std::sort(out.begin(), out.end());
  return out;
}

inline std::vector<AgentId> iota_agents(std::size_t n) {
  std::vector<AgentId> v(n);
  for (std::size_t i = 0; i < n; ++i) v[i] = i;
  return v;
}

}  // namespace gsc

#endif  // GSC_RANDOM_HPP_
