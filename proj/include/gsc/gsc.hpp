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

// Everything except the live HTTP transport, which needs OpenSSL for
// https endpoints and is included separately.

#ifndef GSC_GSC_HPP_
#define GSC_GSC_HPP_

#include "gsc/axioms.hpp"
#include "gsc/core.hpp"
#include "gsc/experiments.hpp"
#include "gsc/instances.hpp"
#include "gsc/io.hpp"
#include "gsc/llm/adapter.hpp"
#include "gsc/llm/assignment.hpp"
#include "gsc/llm/confusion.hpp"
#include "gsc/llm/pilot.hpp"
#include "gsc/llm/prompts.hpp"
#include "gsc/llm/transport.hpp"
#include "gsc/llm/types.hpp"
#include "gsc/oracles.hpp"
#include "gsc/processes.hpp"
#include "gsc/random.hpp"

#endif  // GSC_GSC_HPP_
