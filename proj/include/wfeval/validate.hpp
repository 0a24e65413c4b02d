#pragma once

// Structural validation, deterministic topological ordering and the compiled
// index every analysis runs on.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <functional>
#include <map>
#include <queue>
#include <set>
#include <string>
#include <vector>

#include "wfeval/error.hpp"
#include "wfeval/graph.hpp"

namespace wfeval {

struct Violation {
  std::string code;   // e.g. CYCLE, INPUT_HAS_INEDGE
  std::string locus;  // node id, "from->to" for edges, or the graph id
  std::string message;

  bool operator==(const Violation&) const = default;
};

struct ValidationReport {
  bool ok = true;
  std::vector<Violation> violations;

  bool has(std::string_view code) const {
    return std::any_of(violations.begin(), violations.end(),
                       [&](const Violation& v) { return v.code == code; });
  }
  std::string summary() const {
    std::string out;
    for (const auto& v : violations) {
      if (!out.empty()) out += "; ";
      out += v.code + " at " + v.locus + ": " + v.message;
    }
    return out;
  }
};

namespace detail {

inline std::string edge_locus(const Edge& e) { return e.from + "->" + e.to; }

inline bool in_unit(double x) { return std::isfinite(x) && x >= 0.0 && x <= 1.0; }

// Kahn's algorithm with a min-heap on node id. Returns the ids that could be
// ordered; nodes on or behind a cycle are left out.
inline std::vector<std::string> kahn_by_id(const std::set<std::string>& ids,
                                           const std::vector<Edge>& edges) {
  std::map<std::string, std::vector<std::string>> succ;
  std::map<std::string, std::size_t> indeg;
  for (const auto& id : ids) indeg[id] = 0;
  for (const auto& e : edges) {
    if (!ids.count(e.from) || !ids.count(e.to)) continue;
    succ[e.from].push_back(e.to);
    ++indeg[e.to];
  }
  std::priority_queue<std::string, std::vector<std::string>, std::greater<>> ready;
  for (const auto& [id, d] : indeg)
    if (d == 0) ready.push(id);
  std::vector<std::string> order;
  order.reserve(ids.size());
  while (!ready.empty()) {
    std::string id = ready.top();
    ready.pop();
    for (const auto& next : succ[id])
      if (--indeg[next] == 0) ready.push(next);
    order.push_back(std::move(id));
  }
  return order;
}

inline void check_attributes(const WorkflowGraph& w, const Node& n, ValidationReport& r) {
  auto add = [&](const char* code, std::string msg) {
    r.violations.push_back({code, n.id, std::move(msg)});
  };
  auto check_prob = [&](const char* name, double v, const char* code) {
    if (!in_unit(v)) add(code, std::string(name) + "=" + std::to_string(v) + " outside [0,1]");
  };
  auto check_vec = [&](const char* name, const std::vector<double>& v, std::size_t want) {
    if (v.size() != want)
      add("DIMENSION_MISMATCH", std::string(name) + " has length " + std::to_string(v.size()) +
                                    ", registry has " + std::to_string(want));
    for (double x : v)
      if (!std::isfinite(x) || x < 0.0) {
        add("NEGATIVE_RESOURCE", std::string(name) + " entry " + std::to_string(x) + " is not >= 0");
        break;
      }
  };

  switch (n.role()) {
    case Role::Input:
      check_prob("pi", n.input().pi, "PROBABILITY_RANGE");
      break;
    case Role::Task: {
      const auto& t = n.task();
      check_prob("p", t.p, "PROBABILITY_RANGE");
      check_prob("q", t.q, "PROBABILITY_RANGE");
      check_prob("cp", t.cp, "ANNOTATION_RANGE");
      check_prob("ih", t.ih, "ANNOTATION_RANGE");
      if (!std::isfinite(t.d) || t.d < 0.0) add("NEGATIVE_DURATION", "d=" + std::to_string(t.d));
      check_vec("r_g", t.r_g, w.cumulative_dims().size());
      check_vec("r_r", t.r_r, w.releasable_dims().size());
      break;
    }
    case Role::Output:
      if (!std::isfinite(n.output().gain) || n.output().gain < 0.0)
        add("NEGATIVE_GAIN", "gain=" + std::to_string(n.output().gain));
      break;
  }
}

}  // namespace detail

/// Reports every violated structural or attribute invariant. Never throws.
inline ValidationReport validate(const WorkflowGraph& w) {
  ValidationReport r;
  std::map<std::string, const Node*> by_id;
  for (const auto& n : w.nodes()) {
    if (n.id.empty()) {
      r.violations.push_back({"EMPTY_ID", w.id(), "node with empty id"});
      continue;
    }
    if (!by_id.emplace(n.id, &n).second)
      r.violations.push_back({"DUPLICATE_NODE", n.id, "node id declared more than once"});
    detail::check_attributes(w, n, r);
  }

  std::map<std::string, std::size_t> indeg, outdeg;
  std::set<Edge> seen;
  std::vector<Edge> usable;
  for (const auto& e : w.edges()) {
    const auto locus = detail::edge_locus(e);
    auto from = by_id.find(e.from);
    auto to = by_id.find(e.to);
    if (from == by_id.end() || to == by_id.end()) {
      r.violations.push_back({"UNKNOWN_ENDPOINT", locus, "edge endpoint is not a declared node"});
      continue;
    }
    if (e.from == e.to) {
      r.violations.push_back({"SELF_EDGE", locus, "self-loop"});
      continue;
    }
    if (!seen.insert(e).second) {
      r.violations.push_back({"DUPLICATE_EDGE", locus, "edge declared more than once"});
      continue;
    }
    ++outdeg[e.from];
    ++indeg[e.to];
    usable.push_back(e);
    auto ft = from->second->tau();
    auto tt = to->second->tau();
    if (ft && tt && *ft != *tt)
      r.violations.push_back({"TYPE_MISMATCH", locus, "schema " + *ft + " feeds " + *tt});
  }

  for (const auto& [id, node] : by_id) {
    const auto in = indeg[id];
    const auto out = outdeg[id];
    switch (node->role()) {
      case Role::Input:
        if (in > 0) r.violations.push_back({"INPUT_HAS_INEDGE", id, "input nodes take no incoming edges"});
        break;
      case Role::Task:
        if (in == 0) r.violations.push_back({"TASK_NO_INEDGE", id, "task has no parent"});
        if (out == 0) r.violations.push_back({"TASK_NO_OUTEDGE", id, "task has no child"});
        break;
      case Role::Output:
        if (out > 0) r.violations.push_back({"OUTPUT_HAS_OUTEDGE", id, "output nodes take no outgoing edges"});
        if (in == 0) r.violations.push_back({"OUTPUT_NO_INEDGE", id, "output has no producer"});
        break;
    }
  }

  std::set<std::string> ids;
  for (const auto& [id, _] : by_id) ids.insert(id);
  auto order = detail::kahn_by_id(ids, usable);
  if (order.size() != ids.size()) {
    std::set<std::string> ordered(order.begin(), order.end());
    std::string stuck;
    for (const auto& id : ids)
      if (!ordered.count(id)) stuck += (stuck.empty() ? "" : ",") + id;
    r.violations.push_back({"CYCLE", stuck, "edge relation is not acyclic"});
  }

  r.ok = r.violations.empty();
  return r;
}

/// Topological order with ties broken by lexicographic node id.
inline std::vector<std::string> topological_order(const WorkflowGraph& w) {
  std::set<std::string> ids;
  for (const auto& n : w.nodes()) ids.insert(n.id);
  for (const auto& e : w.edges())
    if (!ids.count(e.from) || !ids.count(e.to))
      throw Error(ErrorCode::Validation, "edge " + detail::edge_locus(e) + " has an unknown endpoint");
  auto order = detail::kahn_by_id(ids, w.edges());
  if (order.size() != ids.size()) throw Error(ErrorCode::Cyclic, "workflow " + w.id() + " contains a cycle");
  return order;
}

/// Index-based view of a validated graph. Node indices follow lexicographic
/// id order, and parent/child lists are sorted by index, so every per-node
/// fold visits neighbours in id order.
class GraphIndex {
 public:
  explicit GraphIndex(const WorkflowGraph& w) : graph_(&w) {
    auto report = validate(w);
    if (!report.ok) throw Error(ErrorCode::Validation, "workflow " + w.id() + ": " + report.summary());

    for (const auto& n : w.nodes()) nodes_.push_back(&n);
    std::sort(nodes_.begin(), nodes_.end(), [](const Node* a, const Node* b) { return a->id < b->id; });
    for (std::size_t i = 0; i < nodes_.size(); ++i) index_.emplace(nodes_[i]->id, i);

    parents_.resize(nodes_.size());
    children_.resize(nodes_.size());
    for (const auto& e : w.edges()) {
      auto u = index_.at(e.from), v = index_.at(e.to);
      parents_[v].push_back(u);
      children_[u].push_back(v);
    }
    for (auto& p : parents_) std::sort(p.begin(), p.end());
    for (auto& c : children_) std::sort(c.begin(), c.end());

    for (const auto& id : topological_order(w)) topo_.push_back(index_.at(id));
    for (std::size_t i = 0; i < nodes_.size(); ++i) {
      switch (nodes_[i]->role()) {
        case Role::Input: inputs_.push_back(i); break;
        case Role::Task: tasks_.push_back(i); break;
        case Role::Output: outputs_.push_back(i); break;
      }
    }
  }

  const WorkflowGraph& graph() const noexcept { return *graph_; }
  std::size_t size() const noexcept { return nodes_.size(); }
  const Node& node(std::size_t i) const { return *nodes_[i]; }
  std::size_t index_of(const std::string& id) const { return index_.at(id); }
  const std::vector<std::size_t>& parents(std::size_t i) const { return parents_[i]; }
  const std::vector<std::size_t>& children(std::size_t i) const { return children_[i]; }
  const std::vector<std::size_t>& topological() const noexcept { return topo_; }
  const std::vector<std::size_t>& inputs() const noexcept { return inputs_; }
  const std::vector<std::size_t>& tasks() const noexcept { return tasks_; }
  const std::vector<std::size_t>& outputs() const noexcept { return outputs_; }

 private:
  const WorkflowGraph* graph_;
  std::vector<const Node*> nodes_;
  std::map<std::string, std::size_t> index_;
  std::vector<std::vector<std::size_t>> parents_, children_;
  std::vector<std::size_t> topo_, inputs_, tasks_, outputs_;
};

}  // namespace wfeval
