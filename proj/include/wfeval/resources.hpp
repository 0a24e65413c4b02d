#pragma once

// Workflow-level resource measures: summed cumulative resources, critical
// path duration, and the peak releasable demand under an ASAP schedule.

#include <algorithm>
#include <cstddef>
#include <functional>
#include <map>
#include <queue>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "wfeval/validate.hpp"

namespace wfeval {

struct TaskWindow {
  double start = 0.0;   // ms
  double finish = 0.0;  // ms

  bool operator==(const TaskWindow&) const = default;
};

/// ASAP start/finish per task node id.
using Schedule = std::map<std::string, TaskWindow>;

struct ResourceSummary {
  std::vector<double> cumulative;       // per cumulative dimension
  double duration = 0.0;                // ms
  std::vector<double> releasable_peak;  // per releasable dimension
};

inline std::vector<double> cumulative_resources(const GraphIndex& g) {
  std::vector<double> total(g.graph().cumulative_dims().size(), 0.0);
  for (auto v : g.tasks()) {
    const auto& r = g.node(v).task().r_g;
    for (std::size_t k = 0; k < total.size(); ++k) total[k] += r[k];
  }
  return total;
}

/// Finish time of every node under ASAP; inputs and outputs take no time.
inline std::vector<double> asap_finish_times(const GraphIndex& g) {
  std::vector<double> finish(g.size(), 0.0);
  for (auto v : g.topological()) {
    double start = 0.0;
    for (auto u : g.parents(v)) start = std::max(start, finish[u]);
    const Node& n = g.node(v);
    finish[v] = n.is_task() ? start + n.task().d : start;
  }
  return finish;
}

inline double critical_path_duration(const GraphIndex& g) {
  // Longest task-duration path ending at each node; same DP as the ASAP
  // finish recurrence.
  auto longest = asap_finish_times(g);
  double best = 0.0;
  for (double f : longest) best = std::max(best, f);
  return best;
}

inline Schedule asap_schedule(const GraphIndex& g) {
  auto finish = asap_finish_times(g);
  Schedule s;
  for (auto v : g.tasks()) {
    double start = 0.0;
    for (auto u : g.parents(v)) start = std::max(start, finish[u]);
    s.emplace(g.node(v).id, TaskWindow{start, finish[v]});
  }
  return s;
}

/// Componentwise max over time of the releasable demand of active tasks,
/// a task being active on [start, finish). Finish events come off a min-heap;
/// every event sharing a timestamp is drained (releases and the starts they
/// unlock, including zero-duration tasks) before the active set is measured.
inline std::vector<double> peak_releasable(const GraphIndex& g) {
  const std::size_t dims = g.graph().releasable_dims().size();
  std::vector<double> peak(dims, 0.0);
  if (dims == 0) return peak;

  std::vector<std::size_t> pending(g.size());
  for (std::size_t v = 0; v < g.size(); ++v) pending[v] = g.parents(v).size();
  auto duration = [&](std::size_t v) { return g.node(v).is_task() ? g.node(v).task().d : 0.0; };

  using Event = std::pair<double, std::size_t>;
  std::priority_queue<Event, std::vector<Event>, std::greater<>> heap;
  std::set<std::size_t> active;
  for (std::size_t v = 0; v < g.size(); ++v) {
    if (pending[v] != 0) continue;
    active.insert(v);
    heap.emplace(duration(v), v);
  }

  auto measure = [&] {
    std::vector<double> current(dims, 0.0);
    for (auto v : active) {
      if (!g.node(v).is_task()) continue;
      const auto& r = g.node(v).task().r_r;
      for (std::size_t k = 0; k < dims; ++k) current[k] += r[k];
    }
    for (std::size_t k = 0; k < dims; ++k) peak[k] = std::max(peak[k], current[k]);
  };

  double now = 0.0;
  while (!heap.empty()) {
    const double t = heap.top().first;
    if (t > now) {
      measure();  // active set is constant on [now, t)
      now = t;
    }
    while (!heap.empty() && heap.top().first == t) {
      auto v = heap.top().second;
      heap.pop();
      active.erase(v);
      for (auto w : g.children(v)) {
        if (--pending[w] != 0) continue;
        active.insert(w);
        heap.emplace(t + duration(w), w);
      }
    }
  }
  return peak;
}

inline ResourceSummary resource_summary(const GraphIndex& g) {
  return {cumulative_resources(g), critical_path_duration(g), peak_releasable(g)};
}

inline std::vector<double> cumulative_resources(const WorkflowGraph& w) { return cumulative_resources(GraphIndex(w)); }
inline double critical_path_duration(const WorkflowGraph& w) { return critical_path_duration(GraphIndex(w)); }
inline Schedule asap_schedule(const WorkflowGraph& w) { return asap_schedule(GraphIndex(w)); }
inline std::vector<double> peak_releasable(const WorkflowGraph& w) { return peak_releasable(GraphIndex(w)); }
inline ResourceSummary resource_summary(const WorkflowGraph& w) { return resource_summary(GraphIndex(w)); }

}  // namespace wfeval
