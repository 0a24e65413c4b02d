#pragma once

// JSON workflow, scenario and config documents.
//
// Workflow document (format_version "1.0"):
//   { "format_version": "1.0", "id": "W2",
//     "resources": { "cumulative": ["usd"], "releasable": [] },
//     "nodes": [ { "id": "...", "role": "input",  "pi": 1, "tau": "email" },
//                { "id": "...", "role": "task",   "p": 0.9, "q": 0, "r_g": [1.6e-4], "d": 2300,
//                  "r_r": [], "iota": "llm", "cp": 0.4, "ih": 0.5 },
//                { "id": "...", "role": "output", "gain": 0.92, "tau": "ticket-json" } ],
//     "edges": [ ["from", "to"], ... ],
//     "comment": "...", "provenance": "non-normative" }
// Omitted task fields take p=1, q=0, zero resources and zero duration.

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "wfeval/ranking.hpp"

namespace wfeval {

inline constexpr const char* kFormatVersion = "1.0";

struct WorkflowDocument {
  std::string format_version = kFormatVersion;
  WorkflowGraph graph;
  std::string comment;
  std::string provenance;

  bool operator==(const WorkflowDocument&) const = default;
};

namespace detail {

using nlohmann::json;

class SchemaReader {
 public:
  explicit SchemaReader(std::string path) : path_(std::move(path)) {}

  [[noreturn]] void fail(const std::string& field, const std::string& msg) const {
    throw Error(ErrorCode::Schema, at(field) + ": " + msg);
  }

  std::string at(const std::string& field) const { return path_.empty() ? field : path_ + "." + field; }

  void only(const json& obj, std::initializer_list<std::string_view> allowed) const {
    if (!obj.is_object()) fail("", "expected an object");
    for (const auto& [key, _] : obj.items())
      if (std::find(allowed.begin(), allowed.end(), key) == allowed.end()) fail(key, "unknown field");
  }

  const json& need(const json& obj, const std::string& key) const {
    auto it = obj.find(key);
    if (it == obj.end()) fail(key, "missing required field");
    return *it;
  }

  double number(const json& obj, const std::string& key, double fallback) const {
    auto it = obj.find(key);
    if (it == obj.end()) return fallback;
    if (!it->is_number()) fail(key, "expected a number");
    return it->get<double>();
  }

  double probability(const json& obj, const std::string& key, double fallback) const {
    const double x = number(obj, key, fallback);
    if (!(x >= 0.0 && x <= 1.0)) fail(key, "value " + std::to_string(x) + " outside [0,1]");
    return x;
  }

  std::string string(const json& obj, const std::string& key, std::string fallback = {}) const {
    auto it = obj.find(key);
    if (it == obj.end()) return fallback;
    if (!it->is_string()) fail(key, "expected a string");
    return it->get<std::string>();
  }

  std::vector<double> numbers(const json& obj, const std::string& key, std::vector<double> fallback) const {
    auto it = obj.find(key);
    if (it == obj.end()) return fallback;
    if (!it->is_array()) fail(key, "expected an array of numbers");
    std::vector<double> out;
    for (const auto& x : *it) {
      if (!x.is_number()) fail(key, "expected an array of numbers");
      out.push_back(x.get<double>());
    }
    return out;
  }

  std::vector<std::string> strings(const json& obj, const std::string& key) const {
    auto it = obj.find(key);
    if (it == obj.end()) return {};
    if (!it->is_array()) fail(key, "expected an array of strings");
    std::vector<std::string> out;
    for (const auto& x : *it) {
      if (!x.is_string()) fail(key, "expected an array of strings");
      out.push_back(x.get<std::string>());
    }
    return out;
  }

 private:
  std::string path_;
};

inline json parse_json(std::string_view text) {
  try {
    return json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    throw Error(ErrorCode::Parse, e.what());
  }
}

inline Node parse_node(const json& j, std::size_t i, const std::vector<std::string>& cum,
                       const std::vector<std::string>& rel) {
  SchemaReader r("nodes[" + std::to_string(i) + "]");
  if (!j.is_object()) r.fail("", "expected an object");
  const std::string id = r.string(j, "id");
  if (id.empty()) r.fail("id", "missing or empty node id");
  SchemaReader nr("node " + id);
  if (!nr.need(j, "role").is_string()) nr.fail("role", "expected a string");
  const auto role = j["role"].get<std::string>();
  Node n;
  n.id = id;
  n.comment = nr.string(j, "comment");
  if (role == "input") {
    nr.only(j, {"id", "role", "pi", "tau", "comment"});
    n.attributes = InputAttributes{nr.probability(j, "pi", 1.0), nr.string(j, "tau")};
  } else if (role == "task") {
    nr.only(j, {"id", "role", "p", "q", "r_g", "d", "r_r", "iota", "cp", "ih", "comment"});
    TaskAttributes t;
    t.p = nr.probability(j, "p", 1.0);
    t.q = nr.probability(j, "q", 0.0);
    t.cp = nr.probability(j, "cp", 0.0);
    t.ih = nr.probability(j, "ih", 0.0);
    t.d = nr.number(j, "d", 0.0);
    if (!(t.d >= 0.0)) nr.fail("d", "duration must be >= 0");
    t.r_g = nr.numbers(j, "r_g", std::vector<double>(cum.size(), 0.0));
    t.r_r = nr.numbers(j, "r_r", std::vector<double>(rel.size(), 0.0));
    if (t.r_g.size() != cum.size()) nr.fail("r_g", "length does not match resources.cumulative");
    if (t.r_r.size() != rel.size()) nr.fail("r_r", "length does not match resources.releasable");
    for (double x : t.r_g)
      if (!(x >= 0.0)) nr.fail("r_g", "entries must be >= 0");
    for (double x : t.r_r)
      if (!(x >= 0.0)) nr.fail("r_r", "entries must be >= 0");
    t.iota = nr.string(j, "iota");
    n.attributes = std::move(t);
  } else if (role == "output") {
    nr.only(j, {"id", "role", "gain", "tau", "comment"});
    const double gain = nr.number(j, "gain", 0.0);
    if (!(gain >= 0.0)) nr.fail("gain", "gain must be >= 0");
    n.attributes = OutputAttributes{gain, nr.string(j, "tau")};
  } else {
    nr.fail("role", "expected one of input, task, output");
  }
  return n;
}

inline WorkflowDocument document_from_json(const json& j, const std::string& where = {}) {
  SchemaReader r(where);
  r.only(j, {"format_version", "id", "resources", "nodes", "edges", "comment", "provenance"});
  WorkflowDocument doc;
  if (!r.need(j, "format_version").is_string()) r.fail("format_version", "expected a string");
  doc.format_version = j["format_version"].get<std::string>();
  if (doc.format_version != kFormatVersion) r.fail("format_version", "unsupported version " + doc.format_version);
  const auto id = r.string(j, "id");
  if (id.empty()) r.fail("id", "missing or empty workflow id");

  std::vector<std::string> cum, rel;
  if (auto it = j.find("resources"); it != j.end()) {
    SchemaReader rr(r.at("resources"));
    rr.only(*it, {"cumulative", "releasable"});
    cum = rr.strings(*it, "cumulative");
    rel = rr.strings(*it, "releasable");
  }
  doc.graph = WorkflowGraph(id, cum, rel);

  const auto& nodes = r.need(j, "nodes");
  if (!nodes.is_array()) r.fail("nodes", "expected an array");
  for (std::size_t i = 0; i < nodes.size(); ++i) doc.graph.add_node(parse_node(nodes[i], i, cum, rel));

  const auto& edges = r.need(j, "edges");
  if (!edges.is_array()) r.fail("edges", "expected an array");
  for (std::size_t i = 0; i < edges.size(); ++i) {
    const auto& e = edges[i];
    if (!e.is_array() || e.size() != 2 || !e[0].is_string() || !e[1].is_string())
      r.fail("edges[" + std::to_string(i) + "]", "expected [from, to]");
    doc.graph.add_edge(e[0].get<std::string>(), e[1].get<std::string>());
  }
  doc.comment = r.string(j, "comment");
  doc.provenance = r.string(j, "provenance");
  return doc;
}

inline json node_to_json(const Node& n) {
  json j;
  j["id"] = n.id;
  j["role"] = to_string(n.role());
  switch (n.role()) {
    case Role::Input:
      j["pi"] = n.input().pi;
      j["tau"] = n.input().tau;
      break;
    case Role::Task: {
      const auto& t = n.task();
      j["p"] = t.p;
      j["q"] = t.q;
      j["r_g"] = t.r_g;
      j["d"] = t.d;
      j["r_r"] = t.r_r;
      j["iota"] = t.iota;
      j["cp"] = t.cp;
      j["ih"] = t.ih;
      break;
    }
    case Role::Output:
      j["gain"] = n.output().gain;
      j["tau"] = n.output().tau;
      break;
  }
  if (!n.comment.empty()) j["comment"] = n.comment;
  return j;
}

inline json document_to_json(const WorkflowDocument& doc) {
  json j;
  j["format_version"] = doc.format_version;
  j["id"] = doc.graph.id();
  j["resources"] = {{"cumulative", doc.graph.cumulative_dims()}, {"releasable", doc.graph.releasable_dims()}};
  j["nodes"] = json::array();
  for (const auto& n : doc.graph.nodes()) j["nodes"].push_back(node_to_json(n));
  j["edges"] = json::array();
  for (const auto& e : doc.graph.edges()) j["edges"].push_back({e.from, e.to});
  if (!doc.comment.empty()) j["comment"] = doc.comment;
  if (!doc.provenance.empty()) j["provenance"] = doc.provenance;
  return j;
}

}  // namespace detail

inline std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::Parse, "cannot read " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline void write_file(const std::filesystem::path& path, std::string_view bytes) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::InvalidArgument, "cannot write " + path.string());
  out << bytes;
}

/// Parses a document without structural validation (schema and ranges only).
inline WorkflowDocument parse_document(std::string_view text) {
  if (text.find_first_not_of(" \t\r\n") == std::string_view::npos) throw Error(ErrorCode::Parse, "empty document");
  return detail::document_from_json(detail::parse_json(text));
}

/// Parses and validates a workflow. PARSE for malformed text, SCHEMA for
/// unknown fields, wrong types or out-of-range values, VALIDATION for graph
/// invariant breaches.
inline WorkflowGraph parse_workflow(std::string_view text) {
  auto doc = parse_document(text);
  auto report = validate(doc.graph);
  if (!report.ok) throw Error(ErrorCode::Validation, "workflow " + doc.graph.id() + ": " + report.summary());
  return std::move(doc.graph);
}

inline WorkflowGraph load_workflow(const std::filesystem::path& path) { return parse_workflow(read_file(path)); }

inline std::string emit_document(const WorkflowDocument& doc) { return detail::document_to_json(doc).dump(2) + "\n"; }

inline std::string emit_workflow(const WorkflowGraph& w) {
  WorkflowDocument doc;
  doc.graph = w;
  return emit_document(doc);
}

/// Scenario document: { "format_version": "1.0", "id": "...", "scenarios": [
///   { "probability": 0.3, "file": "w1.json" }, { "probability": 0.7, "workflow": {...} } ] }
/// Relative file paths resolve against `base_dir`.
inline ConditionalWorkflow parse_conditional(std::string_view text, const std::filesystem::path& base_dir = {}) {
  if (text.find_first_not_of(" \t\r\n") == std::string_view::npos) throw Error(ErrorCode::Parse, "empty document");
  const auto j = detail::parse_json(text);
  detail::SchemaReader r("");
  r.only(j, {"format_version", "id", "scenarios", "comment"});
  if (r.string(j, "format_version") != kFormatVersion) r.fail("format_version", "unsupported or missing version");
  ConditionalWorkflow cw;
  cw.id = r.string(j, "id");
  const auto& list = r.need(j, "scenarios");
  if (!list.is_array()) r.fail("scenarios", "expected an array");
  for (std::size_t i = 0; i < list.size(); ++i) {
    detail::SchemaReader sr("scenarios[" + std::to_string(i) + "]");
    const auto& s = list[i];
    sr.only(s, {"probability", "file", "workflow"});
    Scenario sc;
    sc.probability = sr.number(s, "probability", -1.0);
    if (s.contains("file") == s.contains("workflow")) sr.fail("", "exactly one of file or workflow is required");
    if (s.contains("file")) {
      sc.workflow = load_workflow(base_dir / sr.string(s, "file"));
    } else {
      auto doc = detail::document_from_json(s["workflow"], sr.at("workflow"));
      auto report = validate(doc.graph);
      if (!report.ok) throw Error(ErrorCode::Validation, "workflow " + doc.graph.id() + ": " + report.summary());
      sc.workflow = std::move(doc.graph);
    }
    cw.scenarios.push_back(std::move(sc));
  }
  return cw;
}

/// Config document: { "w_g": [..], "w_d": x, "w_r": [..], "alpha_ch": x,
/// "alpha_ob": x, "gamma_s": x, "reward_tolerance": x, "gains": { id: g },
/// "sampler": { "seed": n, "samples": n, "threads": n } }. All keys optional.
inline EvaluationConfig parse_config(std::string_view text) {
  if (text.find_first_not_of(" \t\r\n") == std::string_view::npos) throw Error(ErrorCode::Parse, "empty config");
  const auto j = detail::parse_json(text);
  detail::SchemaReader r("config");
  r.only(j, {"w_g", "w_d", "w_r", "alpha_ch", "alpha_ob", "gamma_s", "reward_tolerance", "gains", "sampler", "comment"});
  EvaluationConfig cfg;
  if (j.contains("w_g")) cfg.w_g = r.numbers(j, "w_g", {});
  if (j.contains("w_r")) cfg.w_r = r.numbers(j, "w_r", {});
  cfg.w_d = r.number(j, "w_d", cfg.w_d);
  cfg.alpha_ch = r.probability(j, "alpha_ch", cfg.alpha_ch);
  cfg.alpha_ob = r.probability(j, "alpha_ob", cfg.alpha_ob);
  cfg.gamma_s = r.probability(j, "gamma_s", cfg.gamma_s);
  cfg.reward_tolerance = r.number(j, "reward_tolerance", cfg.reward_tolerance);
  if (auto it = j.find("gains"); it != j.end()) {
    if (!it->is_object()) r.fail("gains", "expected an object of output id -> gain");
    for (const auto& [id, g] : it->items()) {
      if (!g.is_number() || g.get<double>() < 0.0) r.fail("gains." + id, "expected a non-negative number");
      cfg.gain_overrides[id] = g.get<double>();
    }
  }
  if (auto it = j.find("sampler"); it != j.end()) {
    detail::SchemaReader sr("config.sampler");
    sr.only(*it, {"seed", "samples", "threads"});
    for (const char* key : {"seed", "samples", "threads"})
      if (it->contains(key) && !(*it)[key].is_number_unsigned()) sr.fail(key, "expected a non-negative integer");
    cfg.sampler.seed = it->value("seed", cfg.sampler.seed);
    cfg.sampler.samples = it->value("samples", cfg.sampler.samples);
    cfg.sampler.threads = it->value("threads", cfg.sampler.threads);
  }
  try {
    cfg.check();
  } catch (const Error& e) {
    throw Error(ErrorCode::Schema, e.what());
  }
  return cfg;
}

inline EvaluationConfig load_config(const std::filesystem::path& path) { return parse_config(read_file(path)); }

}  // namespace wfeval
