#pragma once

// Decomposition constructors: recursive separator decomposition (with a
// generic BFS-level separator and the grid hyperplane separator), and the
// layer-by-layer grid path decomposition.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <numeric>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "graph.hpp"
#include "tree_decomposition.hpp"

namespace ztdp {

/// A vertex separator S of a part, with the two sides A and B.
struct Separation {
  std::vector<Vertex> separator;
  std::vector<Vertex> side_a;
  std::vector<Vertex> side_b;
};

/// Given the graph and a vertex subset, returns a separation of that subset.
using SeparatorOracle = std::function<Separation(const Graph&, std::span<const Vertex>)>;

class SeparatorError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

namespace detail {

/// Scratch marks that reset in O(1) by bumping a stamp.
class Marks {
 public:
  explicit Marks(std::size_t n) : stamp_of_(n, 0) {}
  void next() { ++stamp_; }
  void set(Vertex v, std::uint32_t label = 1) {
    stamp_of_[v] = stamp_;
    if (label_.size() != stamp_of_.size()) label_.assign(stamp_of_.size(), 0);
    label_[v] = label;
  }
  bool has(Vertex v) const { return stamp_of_[v] == stamp_; }
  std::uint32_t label(Vertex v) const { return has(v) ? label_[v] : 0; }

 private:
  std::vector<std::uint64_t> stamp_of_;
  std::vector<std::uint32_t> label_;
  std::uint64_t stamp_ = 1;
};

/// Connected components of the subgraph induced by `part`.
inline std::vector<std::vector<Vertex>> components(const Graph& g, std::span<const Vertex> part) {
  Marks in_part(g.vertex_count()), seen(g.vertex_count());
  for (Vertex v : part) in_part.set(v);
  std::vector<std::vector<Vertex>> comps;
  for (Vertex s : part) {
    if (seen.has(s)) continue;
    std::vector<Vertex> comp{s};
    seen.set(s);
    for (std::size_t head = 0; head < comp.size(); ++head)
      for (Vertex w : g.neighbors(comp[head]))
        if (in_part.has(w) && !seen.has(w)) {
          seen.set(w);
          comp.push_back(w);
        }
    comps.push_back(std::move(comp));
  }
  return comps;
}

/// BFS layers of the subgraph induced by `part`, starting at `source`.
inline std::vector<std::vector<Vertex>> bfs_layers(const Graph& g, std::span<const Vertex> part, Vertex source) {
  Marks in_part(g.vertex_count()), seen(g.vertex_count());
  for (Vertex v : part) in_part.set(v);
  std::vector<std::vector<Vertex>> layers{{source}};
  seen.set(source);
  while (true) {
    std::vector<Vertex> next;
    for (Vertex v : layers.back())
      for (Vertex w : g.neighbors(v))
        if (in_part.has(w) && !seen.has(w)) {
          seen.set(w);
          next.push_back(w);
        }
    if (next.empty()) break;
    layers.push_back(std::move(next));
  }
  return layers;
}

inline void check_separation(const Graph& g, std::span<const Vertex> part, const Separation& s) {
  Marks side(g.vertex_count());
  std::size_t total = 0;
  auto mark = [&](const std::vector<Vertex>& vs, std::uint32_t label) {
    for (Vertex v : vs) {
      if (side.has(v)) throw SeparatorError("separator oracle reused vertex " + std::to_string(v));
      side.set(v, label);
      ++total;
    }
  };
  mark(s.separator, 1);
  mark(s.side_a, 2);
  mark(s.side_b, 3);
  if (total != part.size()) throw SeparatorError("separator oracle output is not a partition of the part");
  for (Vertex v : part)
    if (!side.has(v)) throw SeparatorError("separator oracle dropped vertex " + std::to_string(v));
  for (Vertex a : s.side_a)
    for (Vertex w : g.neighbors(a))
      if (side.label(w) == 3)
        throw SeparatorError("not a separator: edge (" + std::to_string(a) + "," + std::to_string(w) +
                             ") joins the two sides");
  if (s.separator.empty() && (s.side_a.empty() || s.side_b.empty()))
    throw SeparatorError("separator oracle made no progress (empty separator and an empty side)");
}

}  // namespace detail

/// Generic separator: splits components when the part is disconnected,
/// otherwise takes the most balanced BFS layer from a peripheral vertex.
inline Separation bfs_separator(const Graph& g, std::span<const Vertex> part) {
  Separation s;
  if (part.empty()) return s;
  auto comps = detail::components(g, part);
  if (comps.size() > 1) {
    std::sort(comps.begin(), comps.end(), [](const auto& a, const auto& b) { return a.size() > b.size(); });
    for (auto& c : comps) {
      auto& side = s.side_a.size() <= s.side_b.size() ? s.side_a : s.side_b;
      side.insert(side.end(), c.begin(), c.end());
    }
    return s;
  }
  auto first = detail::bfs_layers(g, part, part.front());
  auto layers = detail::bfs_layers(g, part, first.back().front());
  if (layers.size() == 1) {
    s.separator.assign(part.begin(), part.end());
    return s;
  }
  if (layers.size() == 2) {
    bool first_small = layers[0].size() <= layers[1].size();
    s.separator = first_small ? layers[0] : layers[1];
    s.side_b = first_small ? layers[1] : layers[0];
    return s;
  }
  std::vector<std::size_t> prefix(layers.size() + 1, 0);
  for (std::size_t i = 0; i < layers.size(); ++i) prefix[i + 1] = prefix[i] + layers[i].size();
  std::size_t best = 1;
  auto cost = [&](std::size_t t) {
    auto below = prefix[t], above = prefix.back() - prefix[t + 1];
    return std::pair{std::max(below, above) + layers[t].size(), layers[t].size()};
  };
  for (std::size_t t = 2; t + 1 < layers.size(); ++t)
    if (cost(t) < cost(best)) best = t;
  s.separator = layers[best];
  for (std::size_t i = 0; i < best; ++i) s.side_a.insert(s.side_a.end(), layers[i].begin(), layers[i].end());
  for (std::size_t i = best + 1; i < layers.size(); ++i)
    s.side_b.insert(s.side_b.end(), layers[i].begin(), layers[i].end());
  return s;
}

/// Recursive separator decomposition. A node handling part P with boundary D
/// (already-placed vertices adjacent to P) gets bag S ∪ D; each side X of
/// the separation becomes a child with boundary N(X) ∩ (S ∪ D). Parts of at
/// most two vertices become leaf bags P ∪ D.
inline TreeDecomposition balanced_td(const Graph& g, const SeparatorOracle& oracle) {
  const std::size_t n = g.vertex_count();
  if (n == 0) return TreeDecomposition({Bag{}}, {no_parent});

  struct Work {
    std::vector<Vertex> part;
    std::vector<Vertex> boundary;
    std::size_t parent;
  };
  std::vector<Bag> bags;
  std::vector<std::size_t> parents;
  std::vector<Work> stack;
  std::vector<Vertex> all(n);
  std::iota(all.begin(), all.end(), Vertex{0});
  stack.push_back({std::move(all), {}, no_parent});

  detail::Marks placed(n);
  while (!stack.empty()) {
    Work w = std::move(stack.back());
    stack.pop_back();
    const std::size_t id = bags.size();
    parents.push_back(w.parent);
    if (w.part.size() <= 2) {
      std::vector<Vertex> bag = w.part;
      bag.insert(bag.end(), w.boundary.begin(), w.boundary.end());
      bags.push_back(make_bag(std::move(bag)));
      continue;
    }
    Separation s = oracle(g, w.part);
    detail::check_separation(g, w.part, s);
    std::vector<Vertex> bag = s.separator;
    bag.insert(bag.end(), w.boundary.begin(), w.boundary.end());
    bags.push_back(make_bag(bag));

    // side B is pushed first so side A is numbered first
    for (auto* side : {&s.side_b, &s.side_a}) {
      if (side->empty()) continue;
      placed.next();
      for (Vertex v : bag) placed.set(v, 1);
      std::vector<Vertex> boundary;
      for (Vertex v : *side)
        for (Vertex u : g.neighbors(v))
          if (placed.label(u) == 1) {
            boundary.push_back(u);
            placed.set(u, 2);
          }
      stack.push_back({std::move(*side), make_bag(std::move(boundary)), id});
    }
  }
  return TreeDecomposition(std::move(bags), std::move(parents));
}

// ---------------------------------------------------------------------------
// Grids

/// Inclusive coordinate box inside a grid.
struct GridRegion {
  std::vector<std::size_t> low;
  std::vector<std::size_t> high;

  std::size_t length(std::size_t dim) const { return high[dim] - low[dim] + 1; }
  std::size_t volume() const {
    std::size_t v = 1;
    for (std::size_t i = 0; i < low.size(); ++i) v *= length(i);
    return v;
  }
  static GridRegion whole(const GridSpec& spec) {
    GridRegion r;
    for (auto len : spec.lengths()) {
      r.low.push_back(0);
      r.high.push_back(len - 1);
    }
    return r;
  }
};

namespace detail {

template <class Fn>
void for_each_in_region(const GridSpec& spec, const GridRegion& region, Fn&& fn) {
  std::vector<std::size_t> c = region.low;
  const std::size_t d = c.size();
  while (true) {
    fn(spec.encode(c));
    std::size_t i = d;
    while (i-- > 0) {
      if (c[i] < region.high[i]) {
        ++c[i];
        break;
      }
      c[i] = region.low[i];
    }
    if (i == static_cast<std::size_t>(-1)) return;
  }
}

}  // namespace detail

/// Cuts the longest dimension (lowest index on ties) with the hyperplane at
/// low + floor((len - 1) / 2).
inline Separation grid_separator(const GridSpec& spec, const GridRegion& region) {
  if (region.low.size() != spec.dimension() || region.high.size() != spec.dimension())
    throw std::invalid_argument("region dimension does not match the grid");
  for (std::size_t i = 0; i < spec.dimension(); ++i)
    if (region.low[i] > region.high[i] || region.high[i] >= spec.length(i))
      throw std::invalid_argument("region is empty or outside the grid");
  std::size_t dim = 0;
  for (std::size_t i = 1; i < spec.dimension(); ++i)
    if (region.length(i) > region.length(dim)) dim = i;
  if (region.length(dim) < 2) throw std::invalid_argument("region of a single vertex cannot be cut");
  const std::size_t cut = region.low[dim] + (region.length(dim) - 1) / 2;
  Separation s;
  detail::for_each_in_region(spec, region, [&](Vertex v) {
    auto c = spec.decode(v)[dim];
    (c < cut ? s.side_a : c == cut ? s.separator : s.side_b).push_back(v);
  });
  return s;
}

/// Separator oracle for parts that are boxes of `spec`.
inline SeparatorOracle grid_oracle(GridSpec spec) {
  return [spec = std::move(spec)](const Graph&, std::span<const Vertex> part) {
    GridRegion box;
    box.low.assign(spec.dimension(), static_cast<std::size_t>(-1));
    box.high.assign(spec.dimension(), 0);
    for (Vertex v : part) {
      auto c = spec.decode(v);
      for (std::size_t i = 0; i < c.size(); ++i) {
        box.low[i] = std::min(box.low[i], c[i]);
        box.high[i] = std::max(box.high[i], c[i]);
      }
    }
    if (box.volume() != part.size()) throw SeparatorError("grid oracle was handed a part that is not a box");
    return grid_separator(spec, box);
  };
}

inline TreeDecomposition grid_balanced_td(const GridSpec& spec) {
  return balanced_td(grid_graph(spec), grid_oracle(spec));
}

/// Path decomposition sweeping the first coordinate: from layer j, add the
/// layer j+1 vertices one at a time, each followed by dropping its layer j
/// neighbour. Max bag size is the cross-section plus one.
inline TreeDecomposition grid_path_decomposition(const GridSpec& spec) {
  const std::size_t layers = spec.length(0);
  const std::size_t cross = spec.volume() / layers;
  std::vector<Bag> bags;
  Bag current;
  for (std::size_t y = 0; y < cross; ++y) current.push_back(static_cast<Vertex>(y));
  bags.push_back(current);
  for (std::size_t j = 0; j + 1 < layers; ++j) {
    for (std::size_t y = 0; y < cross; ++y) {
      auto next = static_cast<Vertex>((j + 1) * cross + y);
      auto prev = static_cast<Vertex>(j * cross + y);
      current.insert(std::upper_bound(current.begin(), current.end(), next), next);
      bags.push_back(current);
      current.erase(std::lower_bound(current.begin(), current.end(), prev));
      bags.push_back(current);
    }
  }
  std::vector<std::size_t> parent(bags.size());
  parent[0] = no_parent;
  for (std::size_t i = 1; i < bags.size(); ++i) parent[i] = i - 1;
  return TreeDecomposition(std::move(bags), std::move(parent));
}

}  // namespace ztdp
