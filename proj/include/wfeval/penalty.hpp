#pragma once

// Normative penalties. Per-task coupling (cp) and information hygiene (ih)
// are annotations; cohesion and observability are their complements. Each
// dimension is aggregated over tasks as a root mean square, then mixed into
// CIP (cohesion/coupling), SIP (observability/hygiene) and the total penalty.

#include <cmath>
#include <string_view>
#include <vector>

#include "wfeval/config.hpp"
#include "wfeval/validate.hpp"

namespace wfeval {

enum class Dimension { Ch, Cp, Ob, Ih };

struct PenaltyBreakdown {
  double ch = 0.0;
  double cp = 0.0;
  double ob = 0.0;
  double ih = 0.0;
  double cip = 0.0;
  double sip = 0.0;
  double total = 0.0;
  double srp_target = 0.0;  // optimal atomicity level; equals alpha_ch
};

namespace detail {

inline double task_value(const TaskAttributes& t, Dimension dim) {
  switch (dim) {
    case Dimension::Ch: return t.ch();
    case Dimension::Cp: return t.cp;
    case Dimension::Ob: return t.ob();
    case Dimension::Ih: return t.ih;
  }
  return 0.0;
}

inline void require_tasks(const GraphIndex& g) {
  if (g.tasks().empty()) throw Error(ErrorCode::NoTasks, "workflow " + g.graph().id() + " has no task nodes");
}

// alpha * (1 - alpha) + mean((alpha - x)^2)
inline double factorized_square(const GraphIndex& g, Dimension dim, double alpha) {
  require_tasks(g);
  double sum = 0.0;
  for (auto v : g.tasks()) {
    const double dev = alpha - task_value(g.node(v).task(), dim);
    sum += dev * dev;
  }
  return alpha * (1.0 - alpha) + sum / static_cast<double>(g.tasks().size());
}

}  // namespace detail

/// Root mean square of one penalty dimension over the task nodes.
inline double aggregate_dimension(const GraphIndex& g, Dimension dim) {
  detail::require_tasks(g);
  double sum = 0.0;
  for (auto v : g.tasks()) {
    const double x = detail::task_value(g.node(v).task(), dim);
    sum += x * x;
  }
  return std::sqrt(sum / static_cast<double>(g.tasks().size()));
}

/// sqrt(alpha_ch * Ch(W)^2 + (1 - alpha_ch) * Cp(W)^2)
inline double cip(const GraphIndex& g, const EvaluationConfig& cfg) {
  const double ch = aggregate_dimension(g, Dimension::Ch);
  const double cp = aggregate_dimension(g, Dimension::Cp);
  return std::sqrt(cfg.alpha_ch * ch * ch + (1.0 - cfg.alpha_ch) * cp * cp);
}

/// sqrt(alpha_ch * (1 - alpha_ch) + mean((alpha_ch - Cp(v))^2)); algebraically
/// equal to cip() because Ch(v) = 1 - Cp(v).
inline double cip_factorized(const GraphIndex& g, const EvaluationConfig& cfg) {
  return std::sqrt(detail::factorized_square(g, Dimension::Cp, cfg.alpha_ch));
}

/// sqrt(alpha_ob * Ob(W)^2 + (1 - alpha_ob) * Ih(W)^2)
inline double sip(const GraphIndex& g, const EvaluationConfig& cfg) {
  const double ob = aggregate_dimension(g, Dimension::Ob);
  const double ih = aggregate_dimension(g, Dimension::Ih);
  return std::sqrt(cfg.alpha_ob * ob * ob + (1.0 - cfg.alpha_ob) * ih * ih);
}

inline double sip_factorized(const GraphIndex& g, const EvaluationConfig& cfg) {
  return std::sqrt(detail::factorized_square(g, Dimension::Ih, cfg.alpha_ob));
}

/// sqrt(gamma_s * cip^2 + (1 - gamma_s) * sip^2)
inline double mix_penalty(double cip_value, double sip_value, double gamma_s) {
  return std::sqrt(gamma_s * cip_value * cip_value + (1.0 - gamma_s) * sip_value * sip_value);
}

inline PenaltyBreakdown total_penalty(const GraphIndex& g, const EvaluationConfig& cfg) {
  cfg.check();
  PenaltyBreakdown b;
  b.ch = aggregate_dimension(g, Dimension::Ch);
  b.cp = aggregate_dimension(g, Dimension::Cp);
  b.ob = aggregate_dimension(g, Dimension::Ob);
  b.ih = aggregate_dimension(g, Dimension::Ih);
  b.cip = cip(g, cfg);
  b.sip = sip(g, cfg);
  b.total = mix_penalty(b.cip, b.sip, cfg.gamma_s);
  b.srp_target = cfg.alpha_ch;
  return b;
}

inline double aggregate_dimension(const WorkflowGraph& w, Dimension dim) { return aggregate_dimension(GraphIndex(w), dim); }
inline double cip(const WorkflowGraph& w, const EvaluationConfig& cfg) { return cip(GraphIndex(w), cfg); }
inline double cip_factorized(const WorkflowGraph& w, const EvaluationConfig& cfg) { return cip_factorized(GraphIndex(w), cfg); }
inline double sip(const WorkflowGraph& w, const EvaluationConfig& cfg) { return sip(GraphIndex(w), cfg); }
inline double sip_factorized(const WorkflowGraph& w, const EvaluationConfig& cfg) { return sip_factorized(GraphIndex(w), cfg); }
inline PenaltyBreakdown total_penalty(const WorkflowGraph& w, const EvaluationConfig& cfg) {
  return total_penalty(GraphIndex(w), cfg);
}

}  // namespace wfeval
