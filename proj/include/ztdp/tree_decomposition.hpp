#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "graph.hpp"

namespace ztdp {

using Bag = std::vector<Vertex>;  // sorted, no duplicates
inline constexpr std::size_t no_parent = std::numeric_limits<std::size_t>::max();

inline Bag make_bag(std::vector<Vertex> vs) {
  std::sort(vs.begin(), vs.end());
  vs.erase(std::unique(vs.begin(), vs.end()), vs.end());
  return vs;
}

inline bool bag_contains(const Bag& bag, Vertex v) { return std::binary_search(bag.begin(), bag.end(), v); }

inline bool bag_includes(const Bag& bag, std::span<const Vertex> members) {
  return std::all_of(members.begin(), members.end(), [&](Vertex v) { return bag_contains(bag, v); });
}

/// Rooted tree of bags. Node 0 is not necessarily the root.
class TreeDecomposition {
 public:
  TreeDecomposition() = default;

  TreeDecomposition(std::vector<Bag> bags, std::vector<std::size_t> parent)
      : bags_(std::move(bags)), parent_(std::move(parent)) {
    if (bags_.size() != parent_.size()) throw std::invalid_argument("bags and parent links differ in length");
    if (bags_.empty()) throw std::invalid_argument("tree decomposition needs at least one node");
    for (auto& b : bags_) b = make_bag(std::move(b));
    children_.assign(bags_.size(), {});
    std::size_t roots = 0;
    for (std::size_t i = 0; i < parent_.size(); ++i) {
      if (parent_[i] == no_parent) {
        root_ = i;
        ++roots;
      } else if (parent_[i] >= bags_.size() || parent_[i] == i) {
        throw std::invalid_argument("bad parent link at node " + std::to_string(i));
      } else {
        children_[parent_[i]].push_back(i);
      }
    }
    if (roots != 1) throw std::invalid_argument("tree decomposition must have exactly one root");
    // every node must reach the root
    std::size_t reached = 0;
    std::vector<std::size_t> stack{root_};
    while (!stack.empty()) {
      auto x = stack.back();
      stack.pop_back();
      ++reached;
      for (auto c : children_[x]) stack.push_back(c);
    }
    if (reached != bags_.size()) throw std::invalid_argument("parent links contain a cycle");
  }

  std::size_t size() const { return bags_.size(); }
  std::size_t root() const { return root_; }
  const Bag& bag(std::size_t x) const { return bags_.at(x); }
  const std::vector<Bag>& bags() const { return bags_; }
  std::size_t parent(std::size_t x) const { return parent_.at(x); }
  const std::vector<std::size_t>& parents() const { return parent_; }
  const std::vector<std::size_t>& children(std::size_t x) const { return children_.at(x); }

  /// Nodes with parents before children.
  std::vector<std::size_t> preorder() const {
    std::vector<std::size_t> order, stack{root_};
    order.reserve(size());
    while (!stack.empty()) {
      auto x = stack.back();
      stack.pop_back();
      order.push_back(x);
      for (auto it = children_[x].rbegin(); it != children_[x].rend(); ++it) stack.push_back(*it);
    }
    return order;
  }

  friend bool operator==(const TreeDecomposition& a, const TreeDecomposition& b) {
    return a.bags_ == b.bags_ && a.parent_ == b.parent_;
  }

 private:
  std::vector<Bag> bags_;
  std::vector<std::size_t> parent_;
  std::vector<std::vector<std::size_t>> children_;
  std::size_t root_ = 0;
};

/// Build from an unrooted tree (edge list between node ids), rooted at `root`.
inline TreeDecomposition root_tree(std::vector<Bag> bags, const std::vector<std::pair<std::size_t, std::size_t>>& tree_edges,
                                   std::size_t root = 0) {
  const std::size_t count = bags.size();
  if (root >= count) throw std::invalid_argument("root out of range");
  if (count > 0 && tree_edges.size() != count - 1)
    throw std::invalid_argument("a tree on " + std::to_string(count) + " nodes needs " + std::to_string(count - 1) +
                                " edges");
  std::vector<std::vector<std::size_t>> adj(count);
  for (auto [a, b] : tree_edges) {
    if (a >= count || b >= count || a == b) throw std::invalid_argument("bad tree edge");
    adj[a].push_back(b);
    adj[b].push_back(a);
  }
  std::vector<std::size_t> parent(count, no_parent);
  std::vector<char> seen(count, 0);
  std::vector<std::size_t> queue{root};
  seen[root] = 1;
  for (std::size_t head = 0; head < queue.size(); ++head) {
    auto x = queue[head];
    for (auto y : adj[x])
      if (!seen[y]) {
        seen[y] = 1;
        parent[y] = x;
        queue.push_back(y);
      }
  }
  if (queue.size() != count) throw std::invalid_argument("decomposition tree is not connected");
  return TreeDecomposition(std::move(bags), std::move(parent));
}

inline TreeDecomposition single_bag_td(std::size_t n) {
  Bag all(n);
  for (std::size_t v = 0; v < n; ++v) all[v] = static_cast<Vertex>(v);
  return TreeDecomposition({std::move(all)}, {no_parent});
}

// ---------------------------------------------------------------------------
// Validation

struct Violation {
  enum class Kind { vertex_range, connectivity, edge_coverage, vertex_coverage };
  Kind kind;
  std::optional<Vertex> vertex;
  std::optional<std::size_t> edge;         // index into the (hyper)edge list
  std::vector<Vertex> edge_members;        // for edge_coverage
  std::vector<std::size_t> nodes;          // x, y, z for connectivity; offending node for range

  std::string describe() const {
    auto list = [](const auto& xs) {
      std::string s;
      for (std::size_t i = 0; i < xs.size(); ++i) s += (i ? "," : "") + std::to_string(xs[i]);
      return s;
    };
    switch (kind) {
      case Kind::vertex_range:
        return "node " + list(nodes) + " references out-of-range vertex " + std::to_string(*vertex);
      case Kind::connectivity:
        return "vertex " + std::to_string(*vertex) + " is in nodes " + std::to_string(nodes[0]) + " and " +
               std::to_string(nodes[1]) + " but not in node " + std::to_string(nodes[2]) + " between them";
      case Kind::edge_coverage:
        return "edge " + std::to_string(*edge) + " {" + list(edge_members) + "} is not inside any bag";
      case Kind::vertex_coverage:
        return "vertex " + std::to_string(*vertex) + " is in no bag";
    }
    return {};
  }
};

struct ValidationReport {
  std::vector<Violation> violations;
  bool ok() const { return violations.empty(); }
};

/// For each (hyper)edge, the node closest to the root whose bag contains it
/// (unique, since those nodes form a subtree), or no_parent.
inline std::vector<std::size_t> shallowest_covering_nodes(const TreeDecomposition& td, const Hypergraph& hg) {
  const std::size_t n = hg.universe_size();
  std::vector<std::size_t> depth(td.size(), 0);
  for (auto x : td.preorder())
    if (td.parent(x) != no_parent) depth[x] = depth[td.parent(x)] + 1;
  std::vector<std::vector<std::size_t>> occurrences(n);
  for (std::size_t x = 0; x < td.size(); ++x)
    for (Vertex v : td.bag(x))
      if (v < n) occurrences[v].push_back(x);

  std::vector<std::size_t> result(hg.edge_count(), no_parent);
  for (std::size_t i = 0; i < hg.edge_count(); ++i) {
    auto members = hg.hyperedge(i);
    Vertex pivot = *std::min_element(members.begin(), members.end(), [&](Vertex a, Vertex b) {
      return occurrences[a].size() < occurrences[b].size();
    });
    for (auto x : occurrences[pivot])
      if (bag_includes(td.bag(x), members) && (result[i] == no_parent || depth[x] < depth[result[i]]))
        result[i] = x;
  }
  return result;
}

inline ValidationReport validate(const Hypergraph& hg, const TreeDecomposition& td) {
  ValidationReport report;
  const std::size_t n = hg.universe_size();
  for (std::size_t x = 0; x < td.size(); ++x)
    for (Vertex v : td.bag(x))
      if (v >= n) report.violations.push_back({Violation::Kind::vertex_range, v, {}, {}, {x}});
  if (!report.ok()) return report;

  // Connectivity: exactly one "top" node (parent lacks v) per vertex.
  std::vector<std::vector<std::size_t>> tops(n);
  for (std::size_t x = 0; x < td.size(); ++x)
    for (Vertex v : td.bag(x))
      if (td.parent(x) == no_parent || !bag_contains(td.bag(td.parent(x)), v)) tops[v].push_back(x);
  auto is_ancestor = [&](std::size_t a, std::size_t d) {
    for (; d != no_parent; d = td.parent(d))
      if (d == a) return true;
    return false;
  };
  for (Vertex v = 0; v < n; ++v) {
    if (tops[v].empty()) {
      report.violations.push_back({Violation::Kind::vertex_coverage, v, {}, {}, {}});
      continue;
    }
    if (tops[v].size() > 1) {
      auto x = tops[v][0], y = tops[v][1];
      if (is_ancestor(y, x)) std::swap(x, y);
      // y is now below x or unrelated to it, so y's parent (which lacks v)
      // lies on the x..y path.
      std::size_t z = td.parent(y);
      report.violations.push_back({Violation::Kind::connectivity, v, {}, {}, {x, y, z}});
    }
  }

  auto covering = shallowest_covering_nodes(td, hg);
  for (std::size_t i = 0; i < hg.edge_count(); ++i)
    if (covering[i] == no_parent)
      report.violations.push_back({Violation::Kind::edge_coverage, {}, i, hg.hyperedges()[i], {}});
  return report;
}

inline ValidationReport validate(const Graph& g, const TreeDecomposition& td) {
  return validate(graph_as_hypergraph(g), td);
}

// ---------------------------------------------------------------------------
// Metrics

struct DecompositionMetrics {
  std::ptrdiff_t width = -1;          // max bag size - 1
  std::size_t tree_depth_h = 0;       // max |union of bags| over root-to-leaf paths
  std::size_t node_count = 0;
  std::size_t join_count = 0;         // nodes with two or more children
  std::size_t leaf_count = 0;
  std::size_t longest_path_nodes = 0; // nodes on the longest root-to-leaf path
  std::optional<std::size_t> max_forgets_on_path;  // modified nice decompositions only
};

namespace detail {

/// Walks a rooted tree depth-first, keeping a multiset count of the bag
/// vertices on the current root path. Returns (h, longest path in nodes).
template <class BagOf, class ChildrenOf>
std::pair<std::size_t, std::size_t> path_union_depth(std::size_t node_count, std::size_t root, std::size_t universe,
                                                     BagOf bag_of, ChildrenOf children_of) {
  std::vector<std::uint32_t> count(universe, 0);
  std::size_t distinct = 0, best = 0, longest = 0;
  struct Frame {
    std::size_t node;
    std::size_t next_child;
    std::size_t depth;
  };
  std::vector<Frame> stack;
  auto enter = [&](std::size_t x, std::size_t depth) {
    for (Vertex v : bag_of(x))
      if (count[v]++ == 0) ++distinct;
    best = std::max(best, distinct);
    longest = std::max(longest, depth);
    stack.push_back({x, 0, depth});
  };
  if (node_count == 0) return {0, 0};
  enter(root, 1);
  while (!stack.empty()) {
    auto& top = stack.back();
    const auto& kids = children_of(top.node);
    if (top.next_child < kids.size()) {
      auto c = kids[top.next_child++];
      enter(c, top.depth + 1);
    } else {
      for (Vertex v : bag_of(top.node))
        if (--count[v] == 0) --distinct;
      stack.pop_back();
    }
  }
  return {best, longest};
}

}  // namespace detail

inline DecompositionMetrics metrics(const TreeDecomposition& td) {
  DecompositionMetrics m;
  m.node_count = td.size();
  std::size_t universe = 0;
  for (const auto& b : td.bags()) {
    m.width = std::max<std::ptrdiff_t>(m.width, static_cast<std::ptrdiff_t>(b.size()) - 1);
    if (!b.empty()) universe = std::max<std::size_t>(universe, b.back() + 1);
  }
  for (std::size_t x = 0; x < td.size(); ++x) {
    if (td.children(x).size() >= 2) ++m.join_count;
    if (td.children(x).empty()) ++m.leaf_count;
  }
  auto [h, longest] = detail::path_union_depth(
      td.size(), td.root(), universe, [&](std::size_t x) -> const Bag& { return td.bag(x); },
      [&](std::size_t x) -> const std::vector<std::size_t>& { return td.children(x); });
  m.tree_depth_h = h;
  m.longest_path_nodes = longest;
  return m;
}

}  // namespace ztdp
