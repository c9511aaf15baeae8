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

// JSON documents exchanged by the CLI:
//   instance  {format:"gsc-instance", version, n, k, statements, utilities, ...}
//   run       {format:"gsc-run", version, process, slate, matching, rounds, instance, ...}
//   verdict   {axiom, verdict, matching?, violation?}
//   report    {experiment, master_seed, trials, rate, ...}

#ifndef GSC_IO_HPP_
#define GSC_IO_HPP_

#include <cmath>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "gsc/axioms.hpp"
#include "gsc/core.hpp"
#include "gsc/experiments.hpp"
#include "gsc/instances.hpp"
#include "gsc/processes.hpp"
#include "json.hpp"

namespace gsc {

using Json = nlohmann::ordered_json;

struct SchemaError : Error {
  using Error::Error;
};

inline constexpr int kInstanceFormatVersion = 1;
inline constexpr int kRunFormatVersion = 1;

namespace detail {

template <class T>
T field(const Json& j, const char* name, const char* where) {
  if (!j.contains(name)) {
    throw SchemaError(std::string(where) + ": missing field '" + name + "'");
  }
  try {
    return j.at(name).get<T>();
  } catch (const nlohmann::json::exception& e) {
    throw SchemaError(std::string(where) + ": field '" + name + "' has the wrong type (" +
                      e.what() + ")");
  }
}

inline Json box_to_json(const Box& b) { return Json{{"lo", b.lo}, {"hi", b.hi}}; }

inline Box box_from_json(const Json& j) {
  Box b{field<std::vector<double>>(j, "lo", "box"), field<std::vector<double>>(j, "hi", "box")};
  if (b.lo.size() != b.hi.size()) throw SchemaError("box: lo/hi dimension mismatch");
  return b;
}

inline Json finite_or_null(double x) { return std::isfinite(x) ? Json(x) : Json(nullptr); }

}  // namespace detail

inline Json to_json(const BuiltInstance& b) {
  const Instance& inst = b.instance;
  Json j;
  j["format"] = "gsc-instance";
  j["version"] = kInstanceFormatVersion;
  j["n"] = inst.n();
  j["k"] = inst.k();
  Json st = Json::array();
  for (const auto& s : inst.statements()) {
    Json e{{"id", s.id}};
    if (s.text) e["text"] = *s.text;
    if (s.box) e["box"] = detail::box_to_json(*s.box);
    st.push_back(std::move(e));
  }
  j["statements"] = std::move(st);
  j["utilities"] = inst.row_major_utilities();
  if (inst.points()) {
    j["points"] = Json{{"dims", inst.points()->dims()}, {"coords", inst.points()->coords()}};
  }
  j["oracle"] = to_string(b.oracle);
  if (b.adversarial) {
    j["adversarial"] = Json{{"size_limit", b.adversarial->size_limit},
                            {"support_size", b.adversarial->support_size},
                            {"pad_support", b.adversarial->pad_support}};
  }
  if (b.query_budget) j["query_budget"] = *b.query_budget;
  if (!b.colors.empty()) j["colors"] = b.colors;
  return j;
}

inline Json to_json(const Instance& inst) {
  BuiltInstance b{inst, inst.is_box_space() ? OracleKind::kBox : OracleKind::kExact,
                  std::nullopt, std::nullopt, {}};
  return to_json(b);
}

inline BuiltInstance instance_from_json(const Json& j) {
  constexpr const char* where = "instance";
  if (!j.is_object()) throw SchemaError("instance: document is not a JSON object");
  if (j.contains("format") && j["format"] != "gsc-instance") {
    throw SchemaError("instance: unexpected format tag " + j["format"].dump());
  }
  const int version = j.contains("version") ? detail::field<int>(j, "version", where)
                                            : kInstanceFormatVersion;
  if (version != kInstanceFormatVersion) {
    throw SchemaError("instance: unsupported version " + std::to_string(version));
  }
  const auto n = detail::field<std::size_t>(j, "n", where);
  const auto k = detail::field<std::size_t>(j, "k", where);
  if (!j.contains("statements") || !j["statements"].is_array()) {
    throw SchemaError("instance: field 'statements' must be an array");
  }
  std::vector<Statement> statements;
  for (const auto& e : j["statements"]) {
    Statement s{detail::field<std::string>(e, "id", "statement"), std::nullopt, std::nullopt};
    if (e.contains("text")) s.text = detail::field<std::string>(e, "text", "statement");
    if (e.contains("box")) s.box = detail::box_from_json(e["box"]);
    statements.push_back(std::move(s));
  }
  auto utilities = detail::field<std::vector<double>>(j, "utilities", where);
  std::optional<PointSet> points;
  if (j.contains("points")) {
    const auto& p = j["points"];
    points = PointSet(detail::field<std::size_t>(p, "dims", "points"),
                      detail::field<std::vector<double>>(p, "coords", "points"));
  }
  BuiltInstance b{Instance(n, k, std::move(statements), std::move(utilities), std::move(points)),
                  OracleKind::kExact, std::nullopt, std::nullopt, {}};
  if (j.contains("oracle")) {
    b.oracle = parse_oracle_kind(detail::field<std::string>(j, "oracle", where));
  } else if (b.instance.is_box_space()) {
    b.oracle = OracleKind::kBox;
  }
  if (j.contains("adversarial")) {
    const auto& a = j["adversarial"];
    b.adversarial = AdversarialRules{detail::field<std::size_t>(a, "size_limit", "adversarial"),
                                     detail::field<std::size_t>(a, "support_size", "adversarial"),
                                     detail::field<bool>(a, "pad_support", "adversarial")};
  }
  if (j.contains("query_budget")) {
    b.query_budget = detail::field<std::size_t>(j, "query_budget", where);
  }
  if (j.contains("colors")) b.colors = detail::field<std::vector<std::size_t>>(j, "colors", where);
  return b;
}

inline Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open '" + path + "' for reading");
  try {
    return Json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw SchemaError("'" + path + "' is not valid JSON: " + e.what());
  }
}

inline void write_json_file(const std::string& path, const Json& j) {
  std::ofstream out(path);
  if (!out) throw Error("cannot open '" + path + "' for writing");
  out << j.dump(2) << '\n';
}

inline Json to_json(const SamplingSchedule& s) {
  return Json{{"formula_sample_size", s.formula_sample_size},
              {"sample_size", s.sample_size},
              {"clamped", s.clamped},
              {"epsilon", s.epsilon},
              {"r_bar_x", s.r_bar_x},
              {"r_bar", s.r_bar},
              {"gen_r", s.gen_r}};
}

// Ids of slate members, resolved through `statement_id`.
template <class IdFn>
Json run_to_json(const ProcessRun& run, IdFn&& statement_id) {
  Json j;
  j["format"] = "gsc-run";
  j["version"] = kRunFormatVersion;
  j["process"] = run.process;
  j["n"] = run.n;
  j["k"] = run.k;
  j["seed"] = run.rng_seed;
  j["success"] = run.success;
  Json slate = Json::array();
  for (StatementRef s : run.slate.members) slate.push_back(statement_id(s));
  j["slate"] = std::move(slate);
  j["slate_refs"] = run.slate.members;
  j["matching"] = run.matching.slot_of;
  Json rounds = Json::array();
  for (const auto& r : run.rounds) {
    Json e{{"round", r.round},
           {"quota", r.quota},
           {"statement", r.statement_id},
           {"statement_ref", r.statement},
           {"removed", r.removed}};
    if (r.sample_size) e["sample_size"] = *r.sample_size;
    if (r.gen_r) e["gen_r"] = *r.gen_r;
    if (r.theta) e["theta"] = detail::finite_or_null(*r.theta);
    e["fallback"] = r.fallback;
    rounds.push_back(std::move(e));
  }
  j["rounds"] = std::move(rounds);
  j["leftover"] = run.leftover;
  if (run.schedule) j["schedule"] = to_json(*run.schedule);
  return j;
}

// Run document including the oracle's transcript summary and, for
// instance-backed oracles, the post-run instance (with any statements the
// oracle materialised), so `verify` can consume it directly.
template <QueryOracle O>
Json run_document(const ProcessRun& run, const O& oracle,
                  const std::optional<BuiltInstance>& source = std::nullopt) {
  Json j = run_to_json(run, [&](StatementRef s) { return oracle.statement_id(s); });
  const Transcript& t = oracle.transcript();
  j["transcript"] = Json{{"queries", t.size()},
                         {"generative", t.count(QueryKind::kGen)},
                         {"discriminative", t.count(QueryKind::kDisc)},
                         {"max_gen_set_size", t.max_gen_set_size()}};
  if constexpr (InstanceOracle<O>) {
    BuiltInstance post{oracle.instance(),
                       source ? source->oracle
                              : (oracle.instance().is_box_space() ? OracleKind::kBox
                                                                  : OracleKind::kExact),
                       source ? source->adversarial : std::nullopt,
                       source ? source->query_budget : std::nullopt,
                       source ? source->colors : std::vector<std::size_t>{}};
    j["instance"] = to_json(post);
  }
  return j;
}

struct RunDocument {
  Slate slate;
  BalancedMatching matching;
  std::optional<BuiltInstance> instance;
};

inline RunDocument run_from_json(const Json& j) {
  constexpr const char* where = "run";
  if (!j.is_object() || (j.contains("format") && j["format"] != "gsc-run")) {
    throw SchemaError("run: not a gsc-run document");
  }
  RunDocument d;
  d.slate.members = detail::field<std::vector<std::size_t>>(j, "slate_refs", where);
  d.matching.slot_of = detail::field<std::vector<std::size_t>>(j, "matching", where);
  if (j.contains("instance")) d.instance = instance_from_json(j["instance"]);
  return d;
}

inline Json to_json(const Violation& v, const Instance& instance) {
  Json j{{"coalition", v.coalition}};
  if (const auto* s = std::get_if<StatementRef>(&v.statement)) {
    j["statement"] = instance.statement(*s).id;
  } else {
    j["statement"] = Json{{"box", detail::box_to_json(std::get<Box>(v.statement))}};
  }
  j["theta"] = v.theta;
  return j;
}

inline Json to_json(const BjrVerdict& v, const Instance& instance) {
  Json j{{"axiom", "bjr"}, {"verdict", to_string(v.kind)}};
  if (v.matching) j["matching"] = v.matching->slot_of;
  if (v.violation) j["violation"] = to_json(*v.violation, instance);
  j["matchings_tried"] = v.matchings_tried;
  if (!v.reason.empty()) j["reason"] = v.reason;
  return j;
}

inline Json jr_verdict_json(const std::optional<Violation>& v, const Instance& instance) {
  Json j{{"axiom", "jr"}, {"verdict", v ? "violated" : "satisfied"}};
  if (v) j["violation"] = to_json(*v, instance);
  return j;
}

inline Json to_json(const TrialReport& r) {
  Json seeds = Json::array();
  for (const auto& o : r.outcomes) seeds.push_back(o.seed);
  return Json{{"experiment", r.experiment},
              {"master_seed", r.master_seed},
              {"trials", r.trials()},
              {"rate", r.summary.rate},
              {"mean", detail::finite_or_null(r.summary.mean)},
              {"median", detail::finite_or_null(r.summary.median)},
              {"q05", detail::finite_or_null(r.summary.q05)},
              {"q95", detail::finite_or_null(r.summary.q95)},
              {"mean_query_size", r.summary.mean_query_size},
              {"seeds", std::move(seeds)}};
}

}  // namespace gsc

#endif  // GSC_IO_HPP_
