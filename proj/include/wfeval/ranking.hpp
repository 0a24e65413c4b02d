#pragma once

// Lexicographic preference (reward first, penalty as tie-breaker), two-stage
// optimal selection, reward distance and conditional-workflow reward.

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include "wfeval/evaluate.hpp"

namespace wfeval {

enum class Ordering { APrecedes, BPrecedes, Equal };

constexpr const char* to_string(Ordering o) noexcept {
  switch (o) {
    case Ordering::APrecedes: return "A_PRECEDES";
    case Ordering::BPrecedes: return "B_PRECEDES";
    case Ordering::Equal: return "EQUAL";
  }
  return "?";
}

/// Higher reward wins; rewards within `tol` tie and the lower penalty wins.
inline Ordering compare(const EvaluationReport& a, const EvaluationReport& b, double tol) {
  const double ra = a.reward_value(), rb = b.reward_value();
  if (ra > rb + tol) return Ordering::APrecedes;
  if (rb > ra + tol) return Ordering::BPrecedes;
  const double la = a.penalty_value(), lb = b.penalty_value();
  if (la < lb - tol) return Ordering::APrecedes;
  if (lb < la - tol) return Ordering::BPrecedes;
  return Ordering::Equal;
}

inline Ordering compare(const EvaluationReport& a, const EvaluationReport& b, const EvaluationConfig& cfg) {
  return compare(a, b, cfg.reward_tolerance);
}

inline double distance(const EvaluationReport& a, const EvaluationReport& b) {
  return std::abs(a.reward_value() - b.reward_value());
}

struct Candidate {
  WorkflowGraph workflow;
  EvaluationReport report;
};

struct CandidateSet {
  std::vector<Candidate> candidates;

  static CandidateSet evaluate_all(std::vector<WorkflowGraph> workflows, const EvaluationConfig& cfg) {
    CandidateSet cs;
    for (auto& w : workflows) {
      auto report = evaluate(w, cfg);
      cs.candidates.push_back({std::move(w), std::move(report)});
    }
    return cs;
  }

  /// Throws INTERFACE_MISMATCH naming the first candidate whose inputs or
  /// outputs differ from the first candidate's.
  void check_interfaces() const {
    if (candidates.empty()) return;
    const auto& ref = candidates.front().report.interface;
    for (const auto& c : candidates)
      if (!(c.report.interface == ref))
        throw Error(ErrorCode::InterfaceMismatch, "candidate " + c.report.workflow_id +
                                                      " does not share the interface of " +
                                                      candidates.front().report.workflow_id);
  }
};

struct Selection {
  std::vector<std::string> reward_optimal;  // every candidate within tol of the best reward
  std::vector<std::string> optimal;         // of those, every candidate within tol of the least penalty
};

inline Selection select_stages(const CandidateSet& cs, const EvaluationConfig& cfg) {
  if (cs.candidates.empty()) throw Error(ErrorCode::InvalidArgument, "candidate set is empty");
  cs.check_interfaces();
  const double tol = cfg.reward_tolerance;

  double best_reward = -std::numeric_limits<double>::infinity();
  for (const auto& c : cs.candidates) best_reward = std::max(best_reward, c.report.reward_value());
  std::vector<const EvaluationReport*> stage1;
  for (const auto& c : cs.candidates)
    if (c.report.reward_value() >= best_reward - tol) stage1.push_back(&c.report);

  double best_penalty = std::numeric_limits<double>::infinity();
  for (const auto* r : stage1) best_penalty = std::min(best_penalty, r->penalty_value());

  Selection sel;
  for (const auto* r : stage1) {
    sel.reward_optimal.push_back(r->workflow_id);
    const double l = r->penalty_value();
    if (l <= best_penalty + tol) sel.optimal.push_back(r->workflow_id);
  }
  std::sort(sel.reward_optimal.begin(), sel.reward_optimal.end());
  std::sort(sel.optimal.begin(), sel.optimal.end());
  return sel;
}

/// Ids of the optimal candidates, sorted by id.
inline std::vector<std::string> select_optimal(const CandidateSet& cs, const EvaluationConfig& cfg) {
  return select_stages(cs, cfg).optimal;
}

struct Scenario {
  WorkflowGraph workflow;
  double probability = 0.0;
};

/// A probability mixture of fully resolved workflows.
struct ConditionalWorkflow {
  std::string id;
  std::vector<Scenario> scenarios;

  static constexpr double kSumTolerance = 1e-9;

  void check() const {
    if (scenarios.empty()) throw Error(ErrorCode::ProbabilitySum, "conditional workflow has no scenarios");
    double total = 0.0;
    for (const auto& s : scenarios) {
      if (!(s.probability >= 0.0 && s.probability <= 1.0))
        throw Error(ErrorCode::ProbabilitySum,
                    "scenario " + s.workflow.id() + " has probability outside [0,1]");
      total += s.probability;
    }
    if (std::abs(total - 1.0) > kSumTolerance)
      throw Error(ErrorCode::ProbabilitySum, "scenario probabilities sum to " + std::to_string(total));
  }
};

inline double conditional_reward(const ConditionalWorkflow& cw, const EvaluationConfig& cfg) {
  cw.check();
  double r = 0.0;
  for (const auto& s : cw.scenarios) r += s.probability * expected_reward(s.workflow, cfg).reward;
  return r;
}

}  // namespace wfeval
