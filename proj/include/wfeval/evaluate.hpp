#pragma once

#include <limits>
#include <optional>
#include <set>
#include <string>
#include <utility>

#include "wfeval/penalty.hpp"
#include "wfeval/reward.hpp"

namespace wfeval {

/// Input and output (id, schema) pairs of a workflow.
struct InterfaceSignature {
  std::set<std::pair<std::string, std::string>> inputs;
  std::set<std::pair<std::string, std::string>> outputs;

  bool operator==(const InterfaceSignature&) const = default;

  static InterfaceSignature of(const WorkflowGraph& w) {
    InterfaceSignature s;
    for (const auto& n : w.nodes()) {
      if (n.is_input()) s.inputs.emplace(n.id, n.input().tau);
      if (n.is_output()) s.outputs.emplace(n.id, n.output().tau);
    }
    return s;
  }
};

/// Every computed quantity for one workflow under one config.
struct EvaluationReport {
  std::string workflow_id;
  InterfaceSignature interface;
  ResourceSummary resources;
  double success_probability = 0.0;
  RewardBreakdown reward;
  std::optional<PenaltyBreakdown> penalty;  // unset when the workflow has no tasks

  double reward_value() const noexcept { return reward.reward; }
  // A workflow without tasks has no defined penalty and ranks behind any that has one.
  double penalty_value() const noexcept {
    return penalty ? penalty->total : std::numeric_limits<double>::infinity();
  }
};

inline EvaluationReport evaluate(const WorkflowGraph& w, const EvaluationConfig& cfg) {
  cfg.check();
  GraphIndex g(w);
  EvaluationReport r;
  r.workflow_id = w.id();
  r.interface = InterfaceSignature::of(w);
  r.resources = resource_summary(g);
  r.success_probability = workflow_success(g);
  r.reward = expected_reward(g, cfg);
  if (!g.tasks().empty()) r.penalty = total_penalty(g, cfg);
  return r;
}

}  // namespace wfeval
