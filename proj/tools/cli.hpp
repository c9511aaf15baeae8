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

// The gsc command line: instance generation, process runs, axiom checks,
// experiments, assignment analysis and reports. run_cli is separate from
// main so tests can drive it in-process.

#ifndef GSC_TOOLS_CLI_HPP_
#define GSC_TOOLS_CLI_HPP_

#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "gsc/gsc.hpp"
#include "gsc/llm/http_transport.hpp"

namespace gsc::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitVerificationFailed = 1;
inline constexpr int kExitUsage = 2;

struct UsageError : Error {
  using Error::Error;
};

namespace detail {

struct BuilderFlags {
  std::string kind;  // empty: the subcommand's default
  std::size_t n = 0;
  std::size_t k = 0;
  std::size_t statements = 8;
  std::size_t dims = 2;
  std::size_t clusters = 3;
  double extent = 10.0;
  double half_width = 1.0;
};

inline void add_builder_flags(CLI::App* app, BuilderFlags& f) {
  app->add_option("--kind", f.kind, "table1|table2|prop32|thm34|box|random");
  app->add_option("--n", f.n, "number of agents (tables: 0 or the fixed size)");
  app->add_option("--k", f.k, "slate size");
  app->add_option("--statements", f.statements, "random: universe size")->capture_default_str();
  app->add_option("--dims", f.dims, "box: dimension")->capture_default_str();
  app->add_option("--clusters", f.clusters, "box: number of point clusters")->capture_default_str();
  app->add_option("--extent", f.extent, "box: cluster centres lie in [0, extent]^dims");
  app->add_option("--half-width", f.half_width, "box: cluster half width");
}

inline ConstructionSpec to_spec(const BuilderFlags& f, std::uint64_t seed) {
  ConstructionSpec spec;
  spec.kind = parse_construction_kind(f.kind.empty() ? "random" : f.kind);
  spec.n = f.n;
  spec.k = f.k;
  spec.seed = seed;
  spec.statements = f.statements;
  spec.box = {f.dims, f.clusters, f.extent, f.half_width};
  return spec;
}

// Writes to `path`, or to `out` when the path is empty or "-".
inline void emit(const std::string& path, const std::string& text, std::ostream& out) {
  if (path.empty() || path == "-") {
    out << text;
    return;
  }
  std::ofstream file(path, std::ios::binary);
  if (!file) throw Error("cannot open '" + path + "' for writing");
  file << text;
}

inline std::string dump(const Json& j) { return j.dump(2) + "\n"; }

inline std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  std::string item;
  std::istringstream in(s);
  while (std::getline(in, item, ',')) {
    item.erase(0, item.find_first_not_of(" \t"));
    item.erase(item.find_last_not_of(" \t") + 1);
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

inline std::vector<std::string> read_lines(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open '" + path + "' for reading");
  std::vector<std::string> lines;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.find_first_not_of(" \t") != std::string::npos) lines.push_back(line);
  }
  return lines;
}

// ---------------------------------------------------------------------------
// run

struct RunFlags {
  BuilderFlags builder;
  std::string instance_path;
  std::string oracle;
  std::string process = "greedy";
  std::string policy = "random";
  std::optional<std::size_t> size_limit;
  std::optional<std::size_t> budget;
  std::uint64_t enumeration_cap = 100000;
  double pac_constant = 1.0;
  std::optional<std::size_t> vc_dim;
  double delta = 0.05;
  std::optional<std::size_t> sample_size;
  std::uint64_t seed = 0;
  std::string out;
  // llm oracle
  std::string participants;
  std::string pool;
  std::string scripted;
  std::string record;
  bool live = false;
  std::string endpoint = "https://api.openai.com";
  std::string api_key_env = "GSC_API_KEY";
  std::string model = "gpt-4";
  std::string prompt_dir = GSC_PROMPT_DIR;
  std::size_t threads = 1;
};

template <QueryOracle O>
ProcessRun execute(O& oracle, std::size_t n, std::size_t k, const RunFlags& f,
                   const SamplingParams& params, std::optional<std::size_t> default_budget) {
  if (f.process == "greedy") return greedy_bjr(oracle, n, k);
  if (f.process == "subset-sim") return greedy_bjr_by_subsets(oracle, n, k, f.enumeration_cap);
  if (f.process == "sampled") {
    return sampled_bjr(oracle, n, k, params, derive_seed(f.seed, "process"));
  }
  if (f.process == "subset-greedy") {
    const auto t = oracle.size_limit();
    if (!t) throw UsageError("--process subset-greedy needs --size-limit or an adversarial instance");
    return subset_greedy(oracle, n, k, *t, parse_query_policy(f.policy),
                         f.budget ? f.budget : default_budget, derive_seed(f.seed, "process"));
  }
  throw UsageError("unknown --process '" + f.process +
                   "' (greedy|sampled|subset-sim|subset-greedy)");
}

inline SamplingParams sampling_params(const RunFlags& f, std::size_t default_vc_dim) {
  return {f.pac_constant, f.vc_dim.value_or(default_vc_dim), f.delta, f.sample_size};
}

inline Json run_on_instance(const RunFlags& f) {
  BuiltInstance built = f.instance_path.empty()
                            ? build(to_spec(f.builder, derive_seed(f.seed, "instance")))
                            : instance_from_json(read_json_file(f.instance_path));
  const OracleKind kind = f.oracle.empty() ? built.oracle : parse_oracle_kind(f.oracle);
  const std::size_t n = built.instance.n(), k = built.instance.k();
  const SamplingParams params = sampling_params(f, vc_dim_upper_bound(built.instance));
  const BuiltInstance source = built;

  auto finish = [&](auto& oracle) {
    const ProcessRun run = execute(oracle, n, k, f, params, source.query_budget);
    Json doc = run_document(run, oracle, source);
    doc["master_seed"] = f.seed;
    doc["oracle"] = to_string(kind);
    return doc;
  };
  switch (kind) {
    case OracleKind::kExact: {
      ExactOracle oracle(std::move(built.instance), f.size_limit);
      return finish(oracle);
    }
    case OracleKind::kBox: {
      BoxOracle oracle(std::move(built.instance), f.size_limit);
      return finish(oracle);
    }
    case OracleKind::kAdversarial: {
      if (!built.adversarial) {
        throw UsageError("the adversarial oracle needs a prop32 or thm34 instance");
      }
      AdversarialRules rules = *built.adversarial;
      if (f.size_limit) rules.size_limit = *f.size_limit;
      AdversarialOracle oracle(std::move(built.instance), rules);
      return finish(oracle);
    }
    case OracleKind::kLlm:
      break;
  }
  throw UsageError("the llm oracle reads --participants, not an instance");
}

inline Json run_on_participants(const RunFlags& f) {
  using namespace gsc::llm;
  if (f.participants.empty()) throw UsageError("--oracle llm needs --participants PATH");
  if (f.live == !f.scripted.empty()) {
    throw UsageError("--oracle llm needs exactly one of --scripted FILE or --live");
  }
  if (f.builder.k == 0) throw UsageError("--oracle llm needs --k");
  const PilotData data = ingest_pilot_data(f.participants);
  const std::size_t n = data.participants.size(), k = f.builder.k;
  if (k > n) throw UsageError("--k exceeds the number of participants");

  std::unique_ptr<Transport> base;
  std::unique_ptr<Transport> retry;
  Transport* transport = nullptr;
  if (f.live) {
    base = std::make_unique<HttpTransport>(EndpointConfig{f.endpoint, "/v1/chat/completions",
                                                          f.api_key_env, 120});
    retry = std::make_unique<RetryingTransport>(*base, RetryPolicy{});
    transport = retry.get();
  } else {
    base = std::make_unique<ScriptedTransport>(ScriptedTransport::from_file(f.scripted));
    transport = base.get();
  }
  std::unique_ptr<RecordingTransport> recorder;
  if (!f.record.empty()) {
    recorder = std::make_unique<RecordingTransport>(*transport, f.record);
    transport = recorder.get();
  }
  LlmOptions opts;
  opts.model = f.model;
  opts.parallelism = f.threads;
  LlmAdapter adapter(*transport, load_prompt_library(f.prompt_dir), opts);
  StatementPool pool;
  if (!f.pool.empty()) {
    for (auto& line : read_lines(f.pool)) pool.add(std::move(line), "initial-cluster");
  }
  LlmOracle oracle(data.participants, adapter, pool, derive_seed(f.seed, "llm"), f.size_limit);
  const ProcessRun run = execute(oracle, n, k, f, sampling_params(f, 0), std::nullopt);
  Json doc = run_document(run, oracle);
  doc["master_seed"] = f.seed;
  doc["oracle"] = "llm";
  Json people = Json::array();
  for (const auto& p : data.participants) people.push_back(p.id);
  doc["participants"] = std::move(people);
  Json entries = Json::array();
  for (const auto& e : pool.snapshot()) {
    entries.push_back(Json{{"text", e.text}, {"provenance", e.provenance}});
  }
  doc["pool"] = std::move(entries);
  return doc;
}

// ---------------------------------------------------------------------------
// verify

struct VerifyFlags {
  std::string instance_path;
  std::string run_path;
  std::string slate;
  std::string matching;
  std::string axiom = "both";
  bool set_variant = false;
  std::size_t search_cap = 10;
  bool expect_satisfied = false;
  std::string out;
};

inline StatementRef resolve_statement(const Instance& inst, const std::string& token) {
  if (auto s = inst.find(token)) return *s;
  throw SchemaError("slate: unknown statement id '" + token + "'");
}

inline Json verify(const VerifyFlags& f, bool& satisfied) {
  if (f.axiom != "bjr" && f.axiom != "jr" && f.axiom != "both") {
    throw UsageError("--axiom must be bjr, jr or both");
  }
  std::optional<RunDocument> run;
  if (!f.run_path.empty()) run = run_from_json(read_json_file(f.run_path));
  std::optional<BuiltInstance> built;
  if (!f.instance_path.empty()) {
    const Json j = read_json_file(f.instance_path);
    built = j.contains("format") && j["format"] == "gsc-run" ? run_from_json(j).instance
                                                              : instance_from_json(j);
  } else if (run) {
    built = run->instance;
  }
  if (!built) throw UsageError("verify needs --instance, or a --run document embedding one");
  const Instance& inst = built->instance;

  Slate slate;
  std::optional<BalancedMatching> matching;
  if (!f.slate.empty()) {
    for (const auto& tok : split_list(f.slate)) slate.members.push_back(resolve_statement(inst, tok));
  } else if (run) {
    slate = run->slate;
    matching = run->matching;
  } else {
    throw UsageError("verify needs --slate or --run");
  }
  if (!f.matching.empty()) {
    BalancedMatching m;
    for (const auto& tok : split_list(f.matching)) {
      try {
        m.slot_of.push_back(std::stoul(tok));
      } catch (const std::exception&) {
        throw UsageError("--matching: '" + tok + "' is not a slot index");
      }
    }
    matching = std::move(m);
  }

  AxiomOptions options;
  options.set_variant = f.set_variant;
  options.matching_search_cap = f.search_cap;
  Json doc;
  Json ids = Json::array();
  for (StatementRef s : slate.members) ids.push_back(inst.statement(s).id);
  doc["slate"] = std::move(ids);
  satisfied = true;
  if (f.axiom != "jr") {
    const BjrVerdict v = check_bjr(inst, slate, matching, options);
    doc["bjr"] = to_json(v, inst);
    satisfied = satisfied && v.satisfied();
  }
  if (f.axiom != "bjr") {
    const auto v = check_jr(inst, slate, options);
    doc["jr"] = jr_verdict_json(v, inst);
    satisfied = satisfied && !v;
  }
  doc["satisfied"] = satisfied;
  return doc;
}

// ---------------------------------------------------------------------------
// experiment

struct ExperimentFlags {
  std::string name;
  BuilderFlags builder;
  std::string instance_path;
  std::size_t trials = 100;
  std::uint64_t seed = 0;
  std::size_t threads = 1;
  std::string csv;
  std::string out;
  std::string m_values = "50,200";
  std::string policy = "both";
  std::optional<std::size_t> budget;
  double pac_constant = 1.0;
  std::optional<std::size_t> vc_dim;
  double delta = 0.05;
  std::optional<std::size_t> sample_size;
};

inline std::string csv_with_prefix(const TrialReport& r, const std::string& name,
                                   const std::string& value, bool header) {
  std::ostringstream raw;
  r.write_csv(raw);
  std::istringstream in(raw.str());
  std::string line, out;
  std::getline(in, line);
  if (header) out += name + "," + line + "\n";
  while (std::getline(in, line)) out += value + "," + line + "\n";
  return out;
}

inline Json experiment(const ExperimentFlags& f, std::string& csv) {
  Json doc{{"experiment", f.name}, {"master_seed", f.seed}, {"trials", f.trials}};
  Json results = Json::array();
  if (f.name == "pac") {
    BuilderFlags b = f.builder;
    if (b.n == 0) b.n = 400;
    if (b.k == 0) b.k = 2;
    const BuiltInstance built = f.instance_path.empty()
                                    ? build(to_spec(b, derive_seed(f.seed, "instance")))
                                    : instance_from_json(read_json_file(f.instance_path));
    bool header = true;
    for (const auto& tok : split_list(f.m_values)) {
      std::size_t m = 0;
      try {
        m = std::stoul(tok);
      } catch (const std::exception&) {
        throw UsageError("--m: '" + tok + "' is not a sample size");
      }
      const TrialReport r = pac_experiment(built.instance, m, f.trials,
                                           derive_seed(f.seed, "pac-m", m), f.threads);
      Json e = to_json(r);
      e["m"] = m;
      results.push_back(std::move(e));
      csv += csv_with_prefix(r, "m", std::to_string(m), header);
      header = false;
    }
  } else if (f.name == "impossibility") {
    BuilderFlags b = f.builder;
    if (b.kind.empty()) b.kind = "prop32";
    if (b.n == 0) b.n = b.kind == "thm34" ? 96 : 8;
    if (b.k == 0) b.k = b.kind == "thm34" ? 4 : 2;
    const ConstructionSpec spec = to_spec(b, 0);
    std::vector<QueryPolicy> policies;
    if (f.policy == "both") {
      policies = {QueryPolicy::kRandom, QueryPolicy::kSequential};
    } else {
      policies = {parse_query_policy(f.policy)};
    }
    bool header = true;
    for (QueryPolicy p : policies) {
      const TrialReport r = impossibility_demo(spec, p, f.trials,
                                               derive_seed(f.seed, to_string(p)), f.budget,
                                               f.threads);
      Json e = to_json(r);
      e["policy"] = to_string(p);
      results.push_back(std::move(e));
      csv += csv_with_prefix(r, "policy", to_string(p), header);
      header = false;
    }
  } else if (f.name == "sampling") {
    BuilderFlags b = f.builder;
    if (b.kind.empty()) b.kind = "box";
    if (b.n == 0) b.n = 2000;
    if (b.k == 0) b.k = 2;
    const ConstructionSpec spec = to_spec(b, 0);
    const std::size_t default_vc = spec.kind == ConstructionKind::kBox
                                       ? 2 * b.dims
                                       : vc_dim_upper_bound(build(spec).instance);
    const SamplingParams params{f.pac_constant, f.vc_dim.value_or(default_vc), f.delta,
                                f.sample_size};
    const TrialReport r = sampled_bjr_success_rate(spec, params, f.trials, f.seed, f.threads);
    Json e = to_json(r);
    e["schedule"] = to_json(resolve_sampling(params, b.n, b.k));
    results.push_back(std::move(e));
    csv += csv_with_prefix(r, "kind", b.kind, true);
  } else {
    throw UsageError("unknown experiment '" + f.name + "' (pac|impossibility|sampling)");
  }
  doc["results"] = std::move(results);
  return doc;
}

// ---------------------------------------------------------------------------
// assign

struct AssignFlags {
  std::string ratings;
  std::string pilot;
  std::string out;
};

struct RatingsTable {
  std::vector<std::string> participants;
  std::vector<std::string> statements;
  std::vector<double> values;  // row-major participants x statements
};

inline RatingsTable ratings_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("ratings") || !j["ratings"].is_array()) {
    throw SchemaError("ratings: expected an object with a 'ratings' array of rows");
  }
  RatingsTable t;
  const auto& rows = j["ratings"];
  std::size_t width = 0;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const auto row = gsc::detail::field<std::vector<double>>(Json{{"row", rows[i]}}, "row", "ratings");
    if (i == 0) width = row.size();
    if (row.size() != width || width == 0) {
      throw SchemaError("ratings: row " + std::to_string(i) + " has " +
                        std::to_string(row.size()) + " entries, expected " + std::to_string(width));
    }
    t.values.insert(t.values.end(), row.begin(), row.end());
  }
  if (rows.empty()) throw SchemaError("ratings: no rows");
  t.participants = j.contains("participants")
                       ? gsc::detail::field<std::vector<std::string>>(j, "participants", "ratings")
                       : std::vector<std::string>{};
  t.statements = j.contains("statements")
                     ? gsc::detail::field<std::vector<std::string>>(j, "statements", "ratings")
                     : std::vector<std::string>{};
  if (t.participants.empty()) {
    for (std::size_t i = 0; i < rows.size(); ++i) t.participants.push_back(std::to_string(i + 1));
  }
  if (t.statements.empty()) {
    for (std::size_t s = 0; s < width; ++s) t.statements.push_back("S" + std::to_string(s + 1));
  }
  if (t.participants.size() != rows.size() || t.statements.size() != width) {
    throw SchemaError("ratings: participant/statement labels do not match the matrix shape");
  }
  return t;
}

inline RatingsTable ratings_from_pilot(const llm::PilotData& data) {
  if (data.validation.empty()) {
    throw llm::IngestionError("pilot data has no validation ratings (participant_id, "
                              "statement_id, rating)");
  }
  RatingsTable t;
  std::set<std::string> ids;
  if (!data.slate.empty()) {
    for (const auto& [id, text] : data.slate) ids.insert(id);
  } else {
    for (const auto& [p, row] : data.validation) {
      for (const auto& [s, r] : row) ids.insert(s);
    }
  }
  t.statements.assign(ids.begin(), ids.end());
  for (const auto& [p, row] : data.validation) {
    t.participants.push_back(p);
    for (const auto& s : t.statements) {
      const auto it = row.find(s);
      if (it == row.end()) {
        throw llm::ValidationError("participant '" + p + "' has no rating for statement '" + s +
                                   "'");
      }
      t.values.push_back(it->second);
    }
  }
  return t;
}

inline Json assign(const AssignFlags& f) {
  if (f.ratings.empty() == f.pilot.empty()) {
    throw UsageError("assign needs exactly one of --ratings FILE or --pilot PATH");
  }
  const RatingsTable t = f.pilot.empty() ? ratings_from_json(read_json_file(f.ratings))
                                         : ratings_from_pilot(llm::ingest_pilot_data(f.pilot));
  const llm::RatingMatrix m(t.participants.size(), t.statements.size(), t.values);
  const auto res = llm::balanced_assignment(m);
  const auto fractions = llm::assigned_level_fractions(m, res.matching);
  Json doc{{"n", m.n()}, {"k", m.k()}, {"statements", t.statements}, {"total", res.total}};
  Json matching = Json::array();
  for (std::size_t i = 0; i < m.n(); ++i) {
    matching.push_back(Json{{"participant", t.participants[i]},
                            {"statement", t.statements[res.matching[i]]},
                            {"rating", m.at(i, res.matching[i])}});
  }
  doc["matching"] = std::move(matching);
  Json levels;
  for (std::size_t r = llm::kRatingLevels; r-- > 0;) levels[llm::kRatingLabels[r]] = fractions[r];
  doc["level_fractions"] = std::move(levels);
  doc["envious_agents"] = llm::envious_agents(m, res.matching);
  return doc;
}

// ---------------------------------------------------------------------------
// report

inline std::string scalar_text(const Json& v) {
  if (v.is_string()) return v.get<std::string>();
  if (v.is_array()) {
    std::string out;
    for (const auto& e : v) {
      if (!out.empty()) out += ';';
      out += scalar_text(e);
    }
    return out;
  }
  return v.dump();
}

inline std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n\r") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

// (kind, rows of field -> value) for one output document of this tool.
inline std::vector<std::pair<std::string, Json>> summarize_document(const Json& j) {
  auto pick = [&](std::initializer_list<const char*> names) {
    Json out;
    for (const char* name : names) {
      if (j.contains(name)) out[name] = j[name];
    }
    return out;
  };
  if (j.contains("format") && j["format"] == "gsc-run") {
    Json s = pick({"process", "oracle", "n", "k", "master_seed", "success", "slate"});
    if (j.contains("transcript")) {
      s["generative_queries"] = j["transcript"]["generative"];
      s["max_gen_set_size"] = j["transcript"]["max_gen_set_size"];
    }
    return {{"run", s}};
  }
  if (j.contains("format") && j["format"] == "gsc-instance") {
    Json s = pick({"n", "k", "oracle"});
    s["statements"] = j["statements"].size();
    return {{"instance", s}};
  }
  if (j.contains("satisfied")) {
    Json s = pick({"slate", "satisfied"});
    if (j.contains("bjr")) s["bjr"] = j["bjr"]["verdict"];
    if (j.contains("jr")) s["jr"] = j["jr"]["verdict"];
    return {{"verify", s}};
  }
  if (j.contains("level_fractions")) {
    Json s = pick({"n", "k", "total", "envious_agents"});
    for (const auto& [label, frac] : j["level_fractions"].items()) s[label] = frac;
    return {{"assign", s}};
  }
  if (j.contains("results") && j.contains("experiment")) {
    std::vector<std::pair<std::string, Json>> rows;
    for (const auto& r : j["results"]) {
      Json s;
      for (const char* name : {"experiment", "m", "policy", "trials", "rate", "mean", "median",
                               "q05", "q95", "mean_query_size"}) {
        if (r.contains(name)) s[name] = r[name];
      }
      rows.emplace_back("experiment", std::move(s));
    }
    return rows;
  }
  throw SchemaError("report: unrecognised document");
}

struct ReportFlags {
  std::vector<std::string> inputs;
  std::string format = "csv";
  std::string out;
};

inline std::string report(const ReportFlags& f) {
  if (f.format != "csv" && f.format != "json") throw UsageError("--format must be csv or json");
  Json all = Json::array();
  std::string csv = "source,kind,field,value\n";
  for (const auto& path : f.inputs) {
    for (auto& [kind, fields] : summarize_document(read_json_file(path))) {
      for (const auto& [name, value] : fields.items()) {
        csv += csv_field(path) + "," + kind + "," + name + "," + csv_field(scalar_text(value)) +
               "\n";
      }
      all.push_back(Json{{"source", path}, {"kind", kind}, {"fields", std::move(fields)}});
    }
  }
  return f.format == "csv" ? csv : dump(all);
}

}  // namespace detail

inline int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  using namespace detail;
  CLI::App app{"Representative slates of statements: processes, oracles and axiom checks.", "gsc"};
  app.require_subcommand(1);

  BuilderFlags gen_flags;
  std::uint64_t gen_seed = 0;
  std::string gen_out;
  auto* gen = app.add_subcommand("gen-instance", "write an instance JSON");
  add_builder_flags(gen, gen_flags);
  gen->add_option("--seed", gen_seed, "master seed")->capture_default_str();
  gen->add_option("-o,--out", gen_out, "output file (default stdout)");

  RunFlags run_flags;
  auto* run = app.add_subcommand("run", "run a process and write a run JSON");
  add_builder_flags(run, run_flags.builder);
  run->add_option("--instance", run_flags.instance_path, "instance JSON (instead of --kind ...)");
  run->add_option("--oracle", run_flags.oracle, "exact|adversarial|box|llm (default: instance's)");
  run->add_option("--process", run_flags.process, "greedy|sampled|subset-sim|subset-greedy")
      ->capture_default_str();
  run->add_option("--policy", run_flags.policy, "subset-greedy query sets: random|sequential");
  run->add_option("--size-limit", run_flags.size_limit, "largest generative query set t");
  run->add_option("--budget", run_flags.budget, "subset-greedy: generative query budget");
  run->add_option("--enumeration-cap", run_flags.enumeration_cap, "subset-sim: C(|S|, r) cap");
  run->add_option("--pac-constant", run_flags.pac_constant, "sampled: C");
  run->add_option("--vc-dim", run_flags.vc_dim, "sampled: d (default: instance bound)");
  run->add_option("--delta", run_flags.delta, "sampled: failure probability");
  run->add_option("--sample-size", run_flags.sample_size, "sampled: override n_x");
  run->add_option("--seed", run_flags.seed, "master seed")->capture_default_str();
  run->add_option("-o,--out", run_flags.out, "output file (default stdout)");
  run->add_option("--participants", run_flags.participants, "llm: pilot-format participant data");
  run->add_option("--pool", run_flags.pool, "llm: initial statements, one per line");
  run->add_option("--scripted", run_flags.scripted, "llm: recorded exchanges to replay");
  run->add_flag("--live", run_flags.live, "llm: call the HTTP endpoint");
  run->add_option("--record", run_flags.record, "llm: append exchanges to this file");
  run->add_option("--endpoint", run_flags.endpoint, "llm: base URL of the endpoint");
  run->add_option("--api-key-env", run_flags.api_key_env, "llm: variable holding the API key");
  run->add_option("--model", run_flags.model, "llm: model name");
  run->add_option("--prompts", run_flags.prompt_dir, "llm: prompt template directory");
  run->add_option("--threads", run_flags.threads, "llm: concurrent requests");

  VerifyFlags verify_flags;
  auto* ver = app.add_subcommand("verify", "check a slate against JR / BJR");
  ver->add_option("--instance", verify_flags.instance_path, "instance JSON");
  ver->add_option("--run", verify_flags.run_path, "run JSON (slate, matching, instance)");
  ver->add_option("--slate", verify_flags.slate, "comma-separated statement ids");
  ver->add_option("--matching", verify_flags.matching, "comma-separated slot per agent");
  ver->add_option("--axiom", verify_flags.axiom, "bjr|jr|both")->capture_default_str();
  ver->add_flag("--set-variant", verify_flags.set_variant, "deviations must leave the slate");
  ver->add_option("--search-cap", verify_flags.search_cap, "largest n for matching search")
      ->capture_default_str();
  ver->add_flag("--expect-satisfied", verify_flags.expect_satisfied,
                "exit 1 unless every checked axiom holds");
  ver->add_option("-o,--out", verify_flags.out, "output file (default stdout)");

  ExperimentFlags exp_flags;
  auto* exp = app.add_subcommand("experiment", "pac | impossibility | sampling trials");
  exp->add_option("name", exp_flags.name, "pac|impossibility|sampling")->required();
  add_builder_flags(exp, exp_flags.builder);
  exp->add_option("--instance", exp_flags.instance_path, "pac: instance JSON");
  exp->add_option("--trials", exp_flags.trials, "trials per setting")->capture_default_str();
  exp->add_option("--seed", exp_flags.seed, "master seed")->capture_default_str();
  exp->add_option("--threads", exp_flags.threads, "worker threads");
  exp->add_option("--m", exp_flags.m_values, "pac: comma-separated sample sizes")
      ->capture_default_str();
  exp->add_option("--policy", exp_flags.policy, "impossibility: random|sequential|both");
  exp->add_option("--budget", exp_flags.budget, "impossibility: generative query budget");
  exp->add_option("--pac-constant", exp_flags.pac_constant, "sampling: C");
  exp->add_option("--vc-dim", exp_flags.vc_dim, "sampling: d");
  exp->add_option("--delta", exp_flags.delta, "sampling: failure probability");
  exp->add_option("--sample-size", exp_flags.sample_size, "sampling: override n_x");
  exp->add_option("--csv", exp_flags.csv, "per-trial CSV output");
  exp->add_option("-o,--out", exp_flags.out, "summary JSON (default stdout)");

  AssignFlags assign_flags;
  auto* asg = app.add_subcommand("assign", "balanced utility-maximising assignment");
  asg->add_option("--ratings", assign_flags.ratings, "ratings JSON ({\"ratings\": [[...]]})");
  asg->add_option("--pilot", assign_flags.pilot, "pilot data with validation ratings");
  asg->add_option("-o,--out", assign_flags.out, "output file (default stdout)");

  ReportFlags report_flags;
  auto* rep = app.add_subcommand("report", "summarise output documents as CSV or JSON");
  rep->add_option("inputs", report_flags.inputs, "documents written by this tool")->required();
  rep->add_option("--format", report_flags.format, "csv|json")->capture_default_str();
  rep->add_option("-o,--out", report_flags.out, "output file (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (gen->parsed()) {
      emit(gen_out, dump(to_json(build(to_spec(gen_flags, gen_seed)))), out);
    } else if (run->parsed()) {
      const bool llm = run_flags.oracle == "llm";
      emit(run_flags.out, dump(llm ? run_on_participants(run_flags) : run_on_instance(run_flags)),
           out);
    } else if (ver->parsed()) {
      bool satisfied = false;
      const Json doc = verify(verify_flags, satisfied);
      emit(verify_flags.out, dump(doc), out);
      if (verify_flags.expect_satisfied && !satisfied) {
        err << "gsc: verification failed: slate does not satisfy the checked axioms\n";
        return kExitVerificationFailed;
      }
    } else if (exp->parsed()) {
      std::string csv;
      const Json doc = experiment(exp_flags, csv);
      if (!exp_flags.csv.empty()) emit(exp_flags.csv, csv, out);
      emit(exp_flags.out, dump(doc), out);
    } else if (asg->parsed()) {
      emit(assign_flags.out, dump(assign(assign_flags)), out);
    } else if (rep->parsed()) {
      emit(report_flags.out, report(report_flags), out);
    }
  } catch (const UsageError& e) {
    err << "gsc: usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const SchemaError& e) {
    err << "gsc: schema error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const llm::IngestionError& e) {
    err << "gsc: ingestion error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const llm::ValidationError& e) {
    err << "gsc: validation error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const llm::TransportError& e) {
    err << "gsc: transport error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const Error& e) {
    err << "gsc: error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitOk;
}

}  // namespace gsc::cli

#endif  // GSC_TOOLS_CLI_HPP_
