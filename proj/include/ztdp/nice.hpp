#pragma once

// Modified nice tree decompositions: every introduce-edge node becomes a
// binary node whose second child is an auxiliary leaf carrying that edge.

#include <algorithm>
#include <cstddef>
#include <iterator>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "graph.hpp"
#include "tree_decomposition.hpp"

namespace ztdp {

enum class NodeKind { leaf, aux_leaf, introduce_vertex, introduce_edge, forget_vertex, join };

inline std::string_view kind_name(NodeKind k) {
  switch (k) {
    case NodeKind::leaf: return "leaf";
    case NodeKind::aux_leaf: return "aux_leaf";
    case NodeKind::introduce_vertex: return "introduce_vertex";
    case NodeKind::introduce_edge: return "introduce_edge";
    case NodeKind::forget_vertex: return "forget_vertex";
    case NodeKind::join: return "join";
  }
  return "?";
}

inline NodeKind kind_from_name(std::string_view s) {
  for (auto k : {NodeKind::leaf, NodeKind::aux_leaf, NodeKind::introduce_vertex, NodeKind::introduce_edge,
                 NodeKind::forget_vertex, NodeKind::join})
    if (kind_name(k) == s) return k;
  throw std::invalid_argument("unknown node kind: " + std::string(s));
}

inline constexpr std::size_t no_node = static_cast<std::size_t>(-1);

struct NiceNode {
  NodeKind kind = NodeKind::leaf;
  Bag bag;
  Vertex vertex = 0;               // introduce_vertex / forget_vertex
  std::size_t edge = no_node;      // introduce_edge / aux_leaf: index into the (hyper)edge list
  std::vector<Vertex> members;     // aux_leaf: the edge itself
  std::vector<std::size_t> children;  // introduce_edge: {main child, aux leaf}

  friend bool operator==(const NiceNode&, const NiceNode&) = default;
};

class ModifiedNiceDecomposition {
 public:
  ModifiedNiceDecomposition() = default;
  ModifiedNiceDecomposition(std::vector<NiceNode> nodes, std::size_t root, std::size_t universe)
      : nodes_(std::move(nodes)), root_(root), universe_(universe) {
    if (root_ >= nodes_.size()) throw std::invalid_argument("root out of range");
  }

  std::size_t size() const { return nodes_.size(); }
  std::size_t root() const { return root_; }
  std::size_t universe_size() const { return universe_; }
  const NiceNode& node(std::size_t x) const { return nodes_.at(x); }
  const std::vector<NiceNode>& nodes() const { return nodes_; }

  std::size_t count(NodeKind k) const {
    return static_cast<std::size_t>(
        std::count_if(nodes_.begin(), nodes_.end(), [k](const NiceNode& n) { return n.kind == k; }));
  }

  std::size_t leaf_count() const { return count(NodeKind::leaf) + count(NodeKind::aux_leaf); }

  friend bool operator==(const ModifiedNiceDecomposition&, const ModifiedNiceDecomposition&) = default;

 private:
  std::vector<NiceNode> nodes_;
  std::size_t root_ = 0;
  std::size_t universe_ = 0;
};

namespace detail {

class NiceBuilder {
 public:
  std::size_t add(NiceNode node) {
    nodes_.push_back(std::move(node));
    return nodes_.size() - 1;
  }
  const Bag& bag(std::size_t x) const { return nodes_[x].bag; }

  std::size_t introduce(std::size_t child, Vertex v) {
    Bag b = bag(child);
    b.insert(std::upper_bound(b.begin(), b.end(), v), v);
    return add({NodeKind::introduce_vertex, std::move(b), v, no_node, {}, {child}});
  }

  std::size_t forget(std::size_t child, Vertex v) {
    Bag b = bag(child);
    b.erase(std::lower_bound(b.begin(), b.end(), v));
    return add({NodeKind::forget_vertex, std::move(b), v, no_node, {}, {child}});
  }

  // Forget what the target lacks first, then introduce what it adds.
  std::size_t morph(std::size_t child, const Bag& target) {
    Bag from = bag(child);
    std::vector<Vertex> drop, gain;
    std::set_difference(from.begin(), from.end(), target.begin(), target.end(), std::back_inserter(drop));
    std::set_difference(target.begin(), target.end(), from.begin(), from.end(), std::back_inserter(gain));
    for (Vertex v : drop) child = forget(child, v);
    for (Vertex v : gain) child = introduce(child, v);
    return child;
  }

  std::size_t join(std::size_t a, std::size_t b) {
    return add({NodeKind::join, bag(a), 0, no_node, {}, {a, b}});
  }

  std::size_t introduce_edge(std::size_t child, std::size_t edge, std::span<const Vertex> members) {
    auto aux = add({NodeKind::aux_leaf, bag(child), 0, edge, {members.begin(), members.end()}, {}});
    return add({NodeKind::introduce_edge, bag(child), 0, edge, {}, {child, aux}});
  }

  std::vector<NiceNode> take() { return std::move(nodes_); }

 private:
  std::vector<NiceNode> nodes_;
};

}  // namespace detail

/// Rewrites a valid decomposition into modified nice form: empty root and
/// leaves, binary joins (left-leaning), and one introduce-edge node with an
/// auxiliary leaf per (hyper)edge, placed at the shallowest original node
/// whose bag contains the edge.
inline ModifiedNiceDecomposition to_modified_nice(const TreeDecomposition& td, const Hypergraph& hg) {
  auto report = validate(hg, td);
  if (!report.ok()) throw std::invalid_argument("invalid tree decomposition: " + report.violations.front().describe());

  auto home = shallowest_covering_nodes(td, hg);
  std::vector<std::vector<std::size_t>> edges_at(td.size());
  for (std::size_t i = 0; i < home.size(); ++i) edges_at[home[i]].push_back(i);

  detail::NiceBuilder b;
  std::vector<std::size_t> top(td.size(), no_node);
  auto order = td.preorder();
  for (auto it = order.rbegin(); it != order.rend(); ++it) {
    const auto x = *it;
    const Bag& target = td.bag(x);
    std::size_t cur = no_node;
    for (auto c : td.children(x)) {
      auto branch = b.morph(top[c], target);
      cur = cur == no_node ? branch : b.join(cur, branch);
    }
    if (cur == no_node) cur = b.morph(b.add({NodeKind::leaf, {}, 0, no_node, {}, {}}), target);
    for (auto e : edges_at[x]) cur = b.introduce_edge(cur, e, hg.hyperedge(e));
    top[x] = cur;
  }
  auto root = b.morph(top[td.root()], Bag{});
  return ModifiedNiceDecomposition(b.take(), root, hg.universe_size());
}

inline ModifiedNiceDecomposition to_modified_nice(const TreeDecomposition& td, const Graph& g) {
  return to_modified_nice(td, graph_as_hypergraph(g));
}

/// Node-type invariants plus edge bookkeeping; returns human-readable problems.
inline std::vector<std::string> check_nice(const ModifiedNiceDecomposition& nice, const Hypergraph& hg) {
  std::vector<std::string> problems;
  auto fail = [&](std::size_t x, const std::string& what) {
    problems.push_back("node " + std::to_string(x) + " (" + std::string(kind_name(nice.node(x).kind)) + "): " + what);
  };
  if (!nice.node(nice.root()).bag.empty()) fail(nice.root(), "root bag is not empty");
  std::vector<std::size_t> carried(hg.edge_count(), 0);
  std::vector<std::size_t> parents(nice.size(), 0);
  for (std::size_t x = 0; x < nice.size(); ++x) {
    const auto& n = nice.node(x);
    for (auto c : n.children) {
      if (c >= nice.size()) {
        fail(x, "child out of range");
        return problems;
      }
      ++parents[c];
    }
    auto with = [&](Bag b, Vertex v) {
      b.insert(std::upper_bound(b.begin(), b.end(), v), v);
      return b;
    };
    switch (n.kind) {
      case NodeKind::leaf:
        if (!n.children.empty() || !n.bag.empty()) fail(x, "leaf must be childless with an empty bag");
        break;
      case NodeKind::aux_leaf:
        if (!n.children.empty()) fail(x, "aux leaf has children");
        if (n.edge >= hg.edge_count() || n.members != hg.hyperedges()[n.edge]) fail(x, "aux leaf edge mismatch");
        else ++carried[n.edge];
        if (!bag_includes(n.bag, n.members)) fail(x, "edge not inside bag");
        break;
      case NodeKind::introduce_vertex:
        if (n.children.size() != 1) fail(x, "needs one child");
        else if (bag_contains(nice.node(n.children[0]).bag, n.vertex) ||
                 with(nice.node(n.children[0]).bag, n.vertex) != n.bag)
          fail(x, "bag is not child bag plus the vertex");
        break;
      case NodeKind::forget_vertex:
        if (n.children.size() != 1) fail(x, "needs one child");
        else if (!bag_contains(nice.node(n.children[0]).bag, n.vertex) ||
                 with(n.bag, n.vertex) != nice.node(n.children[0]).bag)
          fail(x, "bag is not child bag minus the vertex");
        break;
      case NodeKind::join:
        if (n.children.size() != 2) fail(x, "needs two children");
        else if (nice.node(n.children[0]).bag != n.bag || nice.node(n.children[1]).bag != n.bag)
          fail(x, "children bags differ");
        break;
      case NodeKind::introduce_edge:
        if (n.children.size() != 2) {
          fail(x, "needs two children");
          break;
        }
        if (nice.node(n.children[0]).bag != n.bag || nice.node(n.children[1]).bag != n.bag)
          fail(x, "children bags differ");
        if (nice.node(n.children[1]).kind != NodeKind::aux_leaf || nice.node(n.children[1]).edge != n.edge)
          fail(x, "second child is not its auxiliary leaf");
        break;
    }
  }
  for (std::size_t x = 0; x < nice.size(); ++x)
    if (parents[x] != (x == nice.root() ? 0u : 1u)) fail(x, "not a tree: wrong number of parents");
  for (std::size_t e = 0; e < carried.size(); ++e)
    if (carried[e] != 1) problems.push_back("edge " + std::to_string(e) + " carried by " + std::to_string(carried[e]) +
                                            " auxiliary leaves");
  return problems;
}

/// Plain bag tree of a nice decomposition (aux leaves included).
inline TreeDecomposition underlying_td(const ModifiedNiceDecomposition& nice) {
  std::vector<Bag> bags;
  std::vector<std::size_t> parent(nice.size(), no_parent);
  for (std::size_t x = 0; x < nice.size(); ++x) {
    bags.push_back(nice.node(x).bag);
    for (auto c : nice.node(x).children) parent[c] = x;
  }
  return TreeDecomposition(std::move(bags), std::move(parent));
}

inline DecompositionMetrics metrics(const ModifiedNiceDecomposition& nice) {
  DecompositionMetrics m;
  m.node_count = nice.size();
  for (const auto& n : nice.nodes()) {
    m.width = std::max<std::ptrdiff_t>(m.width, static_cast<std::ptrdiff_t>(n.bag.size()) - 1);
    if (n.kind == NodeKind::join || n.kind == NodeKind::introduce_edge) ++m.join_count;
  }
  m.leaf_count = nice.leaf_count();
  auto [h, longest] = detail::path_union_depth(
      nice.size(), nice.root(), nice.universe_size(), [&](std::size_t x) -> const Bag& { return nice.node(x).bag; },
      [&](std::size_t x) -> const std::vector<std::size_t>& { return nice.node(x).children; });
  m.tree_depth_h = h;
  m.longest_path_nodes = longest;

  // max forget nodes on a root-to-leaf path
  std::vector<std::size_t> forgets(nice.size(), 0);
  std::size_t best = 0;
  std::vector<std::size_t> stack{nice.root()};
  forgets[nice.root()] = nice.node(nice.root()).kind == NodeKind::forget_vertex;
  while (!stack.empty()) {
    auto x = stack.back();
    stack.pop_back();
    best = std::max(best, forgets[x]);
    for (auto c : nice.node(x).children) {
      forgets[c] = forgets[x] + (nice.node(c).kind == NodeKind::forget_vertex);
      stack.push_back(c);
    }
  }
  m.max_forgets_on_path = best;
  return m;
}

}  // namespace ztdp
