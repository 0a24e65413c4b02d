#pragma once

// Parallel (a || b) and sequential (a >> b) composition, weak and strong
// equivalence, and the cost-property checks that go with them.

#include <algorithm>
#include <cstdio>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "wfeval/evaluate.hpp"

namespace wfeval {

struct CompositionResult {
  WorkflowGraph workflow;
  std::map<std::string, std::string> relabel_left;   // id in the left operand -> id in the result
  std::map<std::string, std::string> relabel_right;  // id in the right operand -> id in the result
  std::set<std::string> removed_interface;           // sequential only
  std::set<Edge> bridge_edges;                       // sequential only, ids as in the result
};

namespace detail {

inline std::set<std::string> node_ids(const WorkflowGraph& w) {
  std::set<std::string> ids;
  for (const auto& n : w.nodes()) ids.insert(n.id);
  return ids;
}

inline std::vector<std::string> merge_dims(const std::vector<std::string>& a, const std::vector<std::string>& b) {
  std::vector<std::string> out = a;
  for (const auto& d : b)
    if (std::find(out.begin(), out.end(), d) == out.end()) out.push_back(d);
  return out;
}

inline std::vector<double> remap_vector(const std::vector<double>& v, const std::vector<std::string>& from,
                                        const std::vector<std::string>& to) {
  if (from == to) return v;
  std::vector<double> out(to.size(), 0.0);
  for (std::size_t i = 0; i < from.size() && i < v.size(); ++i) {
    auto pos = std::find(to.begin(), to.end(), from[i]) - to.begin();
    out[static_cast<std::size_t>(pos)] = v[i];
  }
  return out;
}

// Ids present in both operands (minus `shared`) are prefixed with their
// graph's id; identical graph ids get a #1/#2 suffix. Everything else keeps
// its id so interfaces stay recognisable.
inline std::pair<std::map<std::string, std::string>, std::map<std::string, std::string>> canonical_relabel(
    const WorkflowGraph& a, const WorkflowGraph& b, const std::set<std::string>& shared) {
  const auto ids_a = node_ids(a), ids_b = node_ids(b);
  std::string tag_a = a.id(), tag_b = b.id();
  if (tag_a == tag_b) {
    tag_a += "#1";
    tag_b += "#2";
  }
  std::set<std::string> taken;
  for (const auto& id : ids_a) taken.insert(id);
  for (const auto& id : ids_b) taken.insert(id);

  auto fresh = [&](const std::string& tag, const std::string& id) {
    std::string label = tag + "/" + id;
    while (taken.count(label)) label += "'";
    taken.insert(label);
    return label;
  };

  std::map<std::string, std::string> ma, mb;
  for (const auto& id : ids_a) ma[id] = (ids_b.count(id) && !shared.count(id)) ? fresh(tag_a, id) : id;
  for (const auto& id : ids_b) mb[id] = (ids_a.count(id) && !shared.count(id)) ? fresh(tag_b, id) : id;
  return {ma, mb};
}

inline Node relabeled(const Node& n, const std::string& id, const WorkflowGraph& src,
                      const std::vector<std::string>& cum, const std::vector<std::string>& rel) {
  Node out = n;
  out.id = id;
  if (auto* t = std::get_if<TaskAttributes>(&out.attributes)) {
    t->r_g = remap_vector(t->r_g, src.cumulative_dims(), cum);
    t->r_r = remap_vector(t->r_r, src.releasable_dims(), rel);
  }
  return out;
}

}  // namespace detail

/// Disjoint union of the two graphs; no edges are added between them.
inline CompositionResult parallel(const WorkflowGraph& a, const WorkflowGraph& b) {
  const auto cum = detail::merge_dims(a.cumulative_dims(), b.cumulative_dims());
  const auto rel = detail::merge_dims(a.releasable_dims(), b.releasable_dims());
  auto [ma, mb] = detail::canonical_relabel(a, b, {});

  CompositionResult res;
  res.workflow = WorkflowGraph(a.id() + "||" + b.id(), cum, rel);
  for (const auto& n : a.nodes()) res.workflow.add_node(detail::relabeled(n, ma.at(n.id), a, cum, rel));
  for (const auto& n : b.nodes()) res.workflow.add_node(detail::relabeled(n, mb.at(n.id), b, cum, rel));
  for (const auto& e : a.edges()) res.workflow.add_edge(ma.at(e.from), ma.at(e.to));
  for (const auto& e : b.edges()) res.workflow.add_edge(mb.at(e.from), mb.at(e.to));
  res.relabel_left = std::move(ma);
  res.relabel_right = std::move(mb);
  return res;
}

/// Feeds a's outputs into b's inputs. Every input of b must match an output
/// of a by id and schema; the matched interface nodes are removed and each
/// (u -> v) in a, (v -> w) in b through an interface node v becomes u -> w.
inline CompositionResult sequential(const WorkflowGraph& a, const WorkflowGraph& b) {
  std::set<std::string> interface;
  std::string unmatched;
  for (const auto& n : b.nodes()) {
    if (!n.is_input()) continue;
    const Node* out = a.find(n.id);
    if (out && out->is_output() && out->output().tau == n.input().tau) {
      interface.insert(n.id);
    } else {
      unmatched += (unmatched.empty() ? "" : ", ") + n.id;
    }
  }
  if (!unmatched.empty())
    throw Error(ErrorCode::InterfaceUnsatisfied,
                "inputs of " + b.id() + " not provided by outputs of " + a.id() + ": " + unmatched);

  const auto cum = detail::merge_dims(a.cumulative_dims(), b.cumulative_dims());
  const auto rel = detail::merge_dims(a.releasable_dims(), b.releasable_dims());
  auto [ma, mb] = detail::canonical_relabel(a, b, interface);

  CompositionResult res;
  res.workflow = WorkflowGraph(a.id() + ">>" + b.id(), cum, rel);
  res.removed_interface = interface;
  for (const auto& n : a.nodes())
    if (!interface.count(n.id)) res.workflow.add_node(detail::relabeled(n, ma.at(n.id), a, cum, rel));
  for (const auto& n : b.nodes())
    if (!interface.count(n.id)) res.workflow.add_node(detail::relabeled(n, mb.at(n.id), b, cum, rel));

  for (const auto& e : a.edges())
    if (!interface.count(e.to)) res.workflow.add_edge(ma.at(e.from), ma.at(e.to));
  for (const auto& e : b.edges())
    if (!interface.count(e.from)) res.workflow.add_edge(mb.at(e.from), mb.at(e.to));

  for (const auto& v : interface) {
    for (const auto& in : a.edges()) {
      if (in.to != v) continue;
      for (const auto& out : b.edges()) {
        if (out.from != v) continue;
        Edge bridge{ma.at(in.from), mb.at(out.to)};
        if (res.bridge_edges.insert(bridge).second) res.workflow.add_edge(bridge.from, bridge.to);
      }
    }
  }

  for (const auto& v : interface) {
    ma.erase(v);
    mb.erase(v);
  }
  res.relabel_left = std::move(ma);
  res.relabel_right = std::move(mb);

  auto report = validate(res.workflow);
  if (report.has("CYCLE")) throw Error(ErrorCode::CycleIntroduced, report.summary());
  if (!report.ok) throw Error(ErrorCode::Validation, "composition " + res.workflow.id() + ": " + report.summary());
  return res;
}

/// Same inputs and outputs, by id and schema.
inline bool weak_equivalent(const WorkflowGraph& a, const WorkflowGraph& b) {
  return InterfaceSignature::of(a) == InterfaceSignature::of(b);
}

namespace detail {

inline std::string exact(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%a", x);
  return buf;
}

inline std::string named_vector(const std::vector<double>& v, const std::vector<std::string>& dims) {
  std::map<std::string, double> m;
  for (std::size_t i = 0; i < dims.size() && i < v.size(); ++i)
    if (v[i] != 0.0) m[dims[i]] = v[i];
  std::string out;
  for (const auto& [k, x] : m) out += k + "=" + exact(x) + ",";
  return out;
}

// Behavioural fingerprint of a node. Interface nodes include their id since
// weak equivalence already pins them; tasks are anonymous.
inline std::string node_key(const Node& n, const WorkflowGraph& w) {
  switch (n.role()) {
    case Role::Input: return "I|" + n.id + "|" + n.input().tau + "|" + exact(n.input().pi);
    case Role::Output: return "O|" + n.id + "|" + n.output().tau + "|" + exact(n.output().gain);
    case Role::Task: {
      const auto& t = n.task();
      return "T|" + exact(t.p) + "|" + exact(t.q) + "|" + exact(t.d) + "|" +
             named_vector(t.r_g, w.cumulative_dims()) + "|" + named_vector(t.r_r, w.releasable_dims());
    }
  }
  return {};
}

// Colour refinement over both graphs with a shared palette.
inline std::pair<std::vector<int>, std::vector<int>> refine_colours(const GraphIndex& ga, const GraphIndex& gb) {
  std::map<std::string, int> palette;
  auto initial = [&](const GraphIndex& g) {
    std::vector<int> c(g.size());
    for (std::size_t i = 0; i < g.size(); ++i)
      c[i] = palette.emplace(node_key(g.node(i), g.graph()), static_cast<int>(palette.size())).first->second;
    return c;
  };
  auto ca = initial(ga), cb = initial(gb);
  for (std::size_t round = 0; round < ga.size() + 1; ++round) {
    std::map<std::string, int> next;
    auto step = [&](const GraphIndex& g, const std::vector<int>& c) {
      std::vector<int> out(g.size());
      for (std::size_t i = 0; i < g.size(); ++i) {
        std::vector<int> ps, cs;
        for (auto u : g.parents(i)) ps.push_back(c[u]);
        for (auto u : g.children(i)) cs.push_back(c[u]);
        std::sort(ps.begin(), ps.end());
        std::sort(cs.begin(), cs.end());
        std::string key = std::to_string(c[i]) + "<";
        for (int x : ps) key += std::to_string(x) + ",";
        key += ">";
        for (int x : cs) key += std::to_string(x) + ",";
        out[i] = next.emplace(key, static_cast<int>(next.size())).first->second;
      }
      return out;
    };
    auto na = step(ga, ca), nb = step(gb, cb);
    const bool stable = std::set<int>(na.begin(), na.end()).size() == std::set<int>(ca.begin(), ca.end()).size() &&
                        std::set<int>(nb.begin(), nb.end()).size() == std::set<int>(cb.begin(), cb.end()).size();
    ca = std::move(na);
    cb = std::move(nb);
    if (stable) break;
  }
  return {ca, cb};
}

}  // namespace detail

/// Conservative strong equivalence: weakly equivalent and isomorphic under a
/// relabeling that preserves every behavioural attribute (pi, p, q, d,
/// resources by dimension name, gains). A false result does not prove the
/// workflows behave differently.
inline bool strong_equivalent(const WorkflowGraph& a, const WorkflowGraph& b) {
  if (!weak_equivalent(a, b)) return false;
  if (a.nodes().size() != b.nodes().size() || a.edges().size() != b.edges().size()) return false;
  if (!validate(a).ok || !validate(b).ok) return false;
  GraphIndex ga(a), gb(b);
  auto [ca, cb] = detail::refine_colours(ga, gb);
  {
    auto sa = ca, sb = cb;
    std::sort(sa.begin(), sa.end());
    std::sort(sb.begin(), sb.end());
    if (sa != sb) return false;
  }

  const auto& order = ga.topological();
  std::vector<std::size_t> map(ga.size(), SIZE_MAX);
  std::vector<bool> used(gb.size(), false);

  std::function<bool(std::size_t)> assign = [&](std::size_t k) -> bool {
    if (k == order.size()) return true;
    const auto v = order[k];
    for (std::size_t w = 0; w < gb.size(); ++w) {
      if (used[w] || cb[w] != ca[v]) continue;
      if (ga.parents(v).size() != gb.parents(w).size()) continue;
      // Parents precede v in topological order, so all are mapped already.
      bool consistent = true;
      for (auto u : ga.parents(v)) {
        const auto& pw = gb.parents(w);
        if (!std::binary_search(pw.begin(), pw.end(), map[u])) {
          consistent = false;
          break;
        }
      }
      if (!consistent) continue;
      map[v] = w;
      used[w] = true;
      if (assign(k + 1)) return true;
      used[w] = false;
      map[v] = SIZE_MAX;
    }
    return false;
  };
  return assign(0);
}

// ---------------------------------------------------------------------------
// Cost properties
// ---------------------------------------------------------------------------

struct AxiomCheck {
  std::string axiom;
  std::string subject;
  bool holds = false;
  std::string detail;
};

struct CostAxiomReport {
  std::vector<AxiomCheck> checks;

  bool all_hold() const {
    return std::all_of(checks.begin(), checks.end(), [](const AxiomCheck& c) { return c.holds; });
  }
};

/// Witnesses for the existential cost properties.
struct CostWitnesses {
  struct Pair {
    WorkflowGraph first, second;
  };
  struct Context {
    WorkflowGraph prefix_a, prefix_b, suffix;
    bool sequential = false;
  };
  std::optional<Pair> non_triviality;             // C(first) != C(second)
  std::optional<Pair> implementation_sensitivity; // weakly equivalent, different cost
  std::vector<Context> context_sensitivity;       // C(a) = C(b), C(a*s) != C(b*s)
  std::optional<Pair> order_sensitivity;          // C(first >> second) != C(second >> first)
};

inline constexpr double kSubadditivitySlack = 1e-12;

/// Checks sub-additivity, parallel commutativity and cost invariance on every
/// pair, and whether each supplied witness demonstrates its property.
/// Requires non-negative weights, under which sub-additivity is meaningful.
inline CostAxiomReport cost_axiom_suite(const std::vector<std::pair<WorkflowGraph, WorkflowGraph>>& pairs,
                                        const EvaluationConfig& cfg, const CostWitnesses& witnesses = {}) {
  if (cfg.has_negative_weights())
    throw Error(ErrorCode::NegativeWeights, "cost properties are only checked for non-negative weights");
  CostAxiomReport report;
  auto add = [&](std::string axiom, std::string subject, bool holds, std::string detail) {
    report.checks.push_back({std::move(axiom), std::move(subject), holds, std::move(detail)});
  };
  auto show = [](double x) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return std::string(buf);
  };

  for (const auto& [a, b] : pairs) {
    const std::string subject = a.id() + "," + b.id();
    const double ca = cost(a, cfg), cb = cost(b, cfg);

    const auto ab = parallel(a, b).workflow;
    const auto ba = parallel(b, a).workflow;
    const double cab = cost(ab, cfg), cba = cost(ba, cfg);
    add("sub-additivity (parallel)", subject, cab <= ca + cb + kSubadditivitySlack,
        show(cab) + " <= " + show(ca + cb));
    add("parallel commutativity", subject, cab == cba, show(cab) + " == " + show(cba));
    add("parallel strong equivalence", subject, strong_equivalent(ab, ba), "a||b vs b||a");

    try {
      const double cs = cost(sequential(a, b).workflow, cfg);
      add("sub-additivity (sequential)", subject, cs <= ca + cb + kSubadditivitySlack,
          show(cs) + " <= " + show(ca + cb));
    } catch (const Error& e) {
      if (e.code() != ErrorCode::InterfaceUnsatisfied) throw;
    }

    if (strong_equivalent(a, b)) add("cost invariance", subject, ca == cb, show(ca) + " == " + show(cb));
  }

  if (const auto& w = witnesses.non_triviality) {
    const double c1 = cost(w->first, cfg), c2 = cost(w->second, cfg);
    add("non-triviality", w->first.id() + "," + w->second.id(), c1 != c2, show(c1) + " != " + show(c2));
  }
  if (const auto& w = witnesses.implementation_sensitivity) {
    const double c1 = cost(w->first, cfg), c2 = cost(w->second, cfg);
    add("implementation sensitivity", w->first.id() + "," + w->second.id(),
        weak_equivalent(w->first, w->second) && c1 != c2, show(c1) + " != " + show(c2));
  }
  for (const auto& ctx : witnesses.context_sensitivity) {
    auto compose = [&](const WorkflowGraph& x) {
      return ctx.sequential ? sequential(x, ctx.suffix).workflow : parallel(x, ctx.suffix).workflow;
    };
    const double c1 = cost(ctx.prefix_a, cfg), c2 = cost(ctx.prefix_b, cfg);
    const double k1 = cost(compose(ctx.prefix_a), cfg), k2 = cost(compose(ctx.prefix_b), cfg);
    add(ctx.sequential ? "context sensitivity (sequential)" : "context sensitivity (parallel)",
        ctx.prefix_a.id() + "," + ctx.prefix_b.id() + "," + ctx.suffix.id(), c1 == c2 && k1 != k2,
        show(c1) + " == " + show(c2) + ", " + show(k1) + " != " + show(k2));
  }
  if (const auto& w = witnesses.order_sensitivity) {
    const double c12 = cost(sequential(w->first, w->second).workflow, cfg);
    const double c21 = cost(sequential(w->second, w->first).workflow, cfg);
    add("order sensitivity", w->first.id() + "," + w->second.id(), c12 != c21, show(c12) + " != " + show(c21));
  }
  return report;
}

}  // namespace wfeval
