#pragma once

// Workflow data model: a DAG of input, task and output nodes with a
// per-role attribute record on every node.

#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace wfeval {

enum class Role { Input, Task, Output };

constexpr const char* to_string(Role role) noexcept {
  switch (role) {
    case Role::Input: return "input";
    case Role::Task: return "task";
    case Role::Output: return "output";
  }
  return "?";
}

struct InputAttributes {
  double pi = 1.0;  // probability the supplied data is correct
  std::string tau;  // schema id, empty when undeclared

  bool operator==(const InputAttributes&) const = default;
};

struct TaskAttributes {
  double p = 1.0;             // success probability when every parent is correct
  double q = 0.0;             // success probability when some parent is incorrect
  std::vector<double> r_g;    // cumulative resources, one entry per cumulative dimension
  double d = 0.0;             // duration, milliseconds
  std::vector<double> r_r;    // releasable resources, one entry per releasable dimension
  std::string iota;           // implementation label, carried but never executed
  double cp = 0.0;            // coupling annotation
  double ih = 0.0;            // information-hygiene annotation

  // Cohesion and observability are the complements of the stored annotations,
  // so Ch + Cp = 1 and Ob + Ih = 1 hold for every task.
  double ch() const noexcept { return 1.0 - cp; }
  double ob() const noexcept { return 1.0 - ih; }

  bool operator==(const TaskAttributes&) const = default;
};

struct OutputAttributes {
  double gain = 0.0;  // value realized when the output is correct
  std::string tau;

  bool operator==(const OutputAttributes&) const = default;
};

using NodeAttributes = std::variant<InputAttributes, TaskAttributes, OutputAttributes>;

struct Node {
  std::string id;
  NodeAttributes attributes;
  std::string comment;  // free text, round-tripped through documents

  Role role() const noexcept { return static_cast<Role>(attributes.index()); }
  bool is_input() const noexcept { return role() == Role::Input; }
  bool is_task() const noexcept { return role() == Role::Task; }
  bool is_output() const noexcept { return role() == Role::Output; }

  const InputAttributes& input() const { return std::get<InputAttributes>(attributes); }
  const TaskAttributes& task() const { return std::get<TaskAttributes>(attributes); }
  const OutputAttributes& output() const { return std::get<OutputAttributes>(attributes); }

  /// Schema id for inputs and outputs; nullopt for tasks or when undeclared.
  std::optional<std::string> tau() const {
    if (auto* in = std::get_if<InputAttributes>(&attributes); in && !in->tau.empty()) return in->tau;
    if (auto* out = std::get_if<OutputAttributes>(&attributes); out && !out->tau.empty()) return out->tau;
    return std::nullopt;
  }

  bool operator==(const Node&) const = default;
};

struct Edge {
  std::string from;
  std::string to;

  auto operator<=>(const Edge&) const = default;
};

/// Candidate workflow structure. Construction does not check invariants;
/// `validate()` reports every breach and the analyses require a valid graph.
class WorkflowGraph {
 public:
  WorkflowGraph() = default;
  WorkflowGraph(std::string id, std::vector<std::string> cumulative_dims,
                std::vector<std::string> releasable_dims)
      : id_(std::move(id)),
        cumulative_dims_(std::move(cumulative_dims)),
        releasable_dims_(std::move(releasable_dims)) {}

  WorkflowGraph& add_node(Node node) {
    nodes_.push_back(std::move(node));
    return *this;
  }
  WorkflowGraph& add_input(std::string id, InputAttributes attrs = {}) {
    return add_node(Node{std::move(id), std::move(attrs), {}});
  }
  WorkflowGraph& add_task(std::string id, TaskAttributes attrs) {
    return add_node(Node{std::move(id), std::move(attrs), {}});
  }
  WorkflowGraph& add_output(std::string id, OutputAttributes attrs = {}) {
    return add_node(Node{std::move(id), std::move(attrs), {}});
  }
  WorkflowGraph& add_edge(std::string from, std::string to) {
    edges_.push_back(Edge{std::move(from), std::move(to)});
    return *this;
  }

  void set_id(std::string id) { id_ = std::move(id); }

  const std::string& id() const noexcept { return id_; }
  const std::vector<Node>& nodes() const noexcept { return nodes_; }
  const std::vector<Edge>& edges() const noexcept { return edges_; }
  const std::vector<std::string>& cumulative_dims() const noexcept { return cumulative_dims_; }
  const std::vector<std::string>& releasable_dims() const noexcept { return releasable_dims_; }

  const Node* find(std::string_view node_id) const noexcept {
    for (const auto& n : nodes_)
      if (n.id == node_id) return &n;
    return nullptr;
  }

  bool operator==(const WorkflowGraph&) const = default;

 private:
  std::string id_;
  std::vector<std::string> cumulative_dims_;
  std::vector<std::string> releasable_dims_;
  std::vector<Node> nodes_;
  std::vector<Edge> edges_;
};

}  // namespace wfeval
