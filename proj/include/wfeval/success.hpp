#pragma once

// Correctness propagation. Inputs are correct with probability pi; a task is
// correct with p when all parents are correct and with q otherwise; an output
// is the conjunction of its parents. Parent events are treated as independent.

#include <map>
#include <string>
#include <vector>

#include "wfeval/validate.hpp"

namespace wfeval {

using NodeSuccessMap = std::map<std::string, double>;

/// P(T_v) per node index of `g`, parents folded in id order.
inline std::vector<double> node_success(const GraphIndex& g) {
  std::vector<double> prob(g.size(), 0.0);
  for (auto v : g.topological()) {
    const Node& n = g.node(v);
    if (n.is_input()) {
      prob[v] = n.input().pi;
      continue;
    }
    double all_parents = 1.0;
    for (auto u : g.parents(v)) all_parents *= prob[u];
    if (n.is_task()) {
      const auto& t = n.task();
      prob[v] = t.q + (t.p - t.q) * all_parents;
    } else {
      prob[v] = all_parents;
    }
  }
  return prob;
}

inline NodeSuccessMap node_success(const WorkflowGraph& w) {
  GraphIndex g(w);
  auto prob = node_success(g);
  NodeSuccessMap out;
  for (std::size_t i = 0; i < g.size(); ++i) out.emplace(g.node(i).id, prob[i]);
  return out;
}

/// Product over outputs of P(T_v), assuming independent output events.
inline double workflow_success(const GraphIndex& g) {
  auto prob = node_success(g);
  double p = 1.0;
  for (auto v : g.outputs()) p *= prob[v];
  return p;
}

inline double workflow_success(const WorkflowGraph& w) { return workflow_success(GraphIndex(w)); }

}  // namespace wfeval
