#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <numeric>
#include <optional>
#include <set>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace ztdp {

using Vertex = std::uint32_t;

struct Edge {
  Vertex u = 0;
  Vertex v = 0;
  friend bool operator==(const Edge&, const Edge&) = default;
  friend auto operator<=>(const Edge&, const Edge&) = default;
};

/// Axis-aligned grid G_d(n_1, ..., n_d). Vertex ids are row-major
/// (last coordinate varies fastest).
class GridSpec {
 public:
  GridSpec() = default;
  explicit GridSpec(std::vector<std::size_t> lengths) : lengths_(std::move(lengths)) {
    if (lengths_.empty()) throw std::invalid_argument("grid needs at least one dimension");
    for (auto len : lengths_)
      if (len == 0) throw std::invalid_argument("grid dimension of length zero");
  }

  const std::vector<std::size_t>& lengths() const { return lengths_; }
  std::size_t dimension() const { return lengths_.size(); }
  std::size_t length(std::size_t dim) const { return lengths_.at(dim); }

  std::size_t volume() const {
    return std::accumulate(lengths_.begin(), lengths_.end(), std::size_t{1}, std::multiplies<>{});
  }
  std::size_t max_length() const { return *std::max_element(lengths_.begin(), lengths_.end()); }

  Vertex encode(std::span<const std::size_t> coords) const {
    std::size_t id = 0;
    for (std::size_t i = 0; i < lengths_.size(); ++i) id = id * lengths_[i] + coords[i];
    return static_cast<Vertex>(id);
  }

  std::vector<std::size_t> decode(Vertex id) const {
    std::vector<std::size_t> coords(lengths_.size());
    std::size_t rest = id;
    for (std::size_t i = lengths_.size(); i-- > 0;) {
      coords[i] = rest % lengths_[i];
      rest /= lengths_[i];
    }
    return coords;
  }

  /// Id difference between neighbours along `dim`.
  std::size_t stride(std::size_t dim) const {
    std::size_t s = 1;
    for (std::size_t i = dim + 1; i < lengths_.size(); ++i) s *= lengths_[i];
    return s;
  }

  friend bool operator==(const GridSpec&, const GridSpec&) = default;

 private:
  std::vector<std::size_t> lengths_;
};

enum class EdgeMultiplicity { simple, multigraph };

/// Undirected graph on vertices 0..n-1. Immutable after construction.
class Graph {
 public:
  Graph() = default;

  Graph(std::size_t n, std::vector<Edge> edges, EdgeMultiplicity mult = EdgeMultiplicity::simple)
      : n_(n), edges_(std::move(edges)), multiplicity_(mult) {
    for (auto& e : edges_) {
      if (e.u >= n_ || e.v >= n_)
        throw std::invalid_argument("edge (" + std::to_string(e.u) + "," + std::to_string(e.v) +
                                    ") has an endpoint out of range");
      if (e.u == e.v) throw std::invalid_argument("self-loop at vertex " + std::to_string(e.u));
      if (e.u > e.v) std::swap(e.u, e.v);
    }
    if (mult == EdgeMultiplicity::simple) {
      std::set<Edge> seen;
      for (const auto& e : edges_)
        if (!seen.insert(e).second)
          throw std::invalid_argument("duplicate edge (" + std::to_string(e.u) + "," + std::to_string(e.v) +
                                      ") in a simple graph");
    }
    adjacency_.assign(n_, {});
    for (const auto& e : edges_) {
      adjacency_[e.u].push_back(e.v);
      adjacency_[e.v].push_back(e.u);
    }
  }

  std::size_t vertex_count() const { return n_; }
  std::size_t edge_count() const { return edges_.size(); }
  const std::vector<Edge>& edges() const { return edges_; }
  std::span<const Vertex> neighbors(Vertex v) const { return adjacency_.at(v); }
  std::size_t degree(Vertex v) const { return adjacency_.at(v).size(); }
  EdgeMultiplicity multiplicity() const { return multiplicity_; }

  /// Set only for graphs produced by grid_graph (or read back from such a file).
  const std::optional<GridSpec>& grid() const { return grid_; }

  friend bool operator==(const Graph& a, const Graph& b) {
    return a.n_ == b.n_ && a.edges_ == b.edges_ && a.multiplicity_ == b.multiplicity_;
  }

 private:
  friend Graph grid_graph(const GridSpec& spec);

  std::size_t n_ = 0;
  std::vector<Edge> edges_;
  EdgeMultiplicity multiplicity_ = EdgeMultiplicity::simple;
  std::vector<std::vector<Vertex>> adjacency_;
  std::optional<GridSpec> grid_;
};

inline Graph make_graph(std::size_t n, std::vector<Edge> edges,
                        EdgeMultiplicity mult = EdgeMultiplicity::simple) {
  return Graph(n, std::move(edges), mult);
}

inline Graph grid_graph(const GridSpec& spec) {
  const std::size_t total = spec.volume();
  std::vector<Edge> edges;
  for (std::size_t id = 0; id < total; ++id) {
    auto coords = spec.decode(static_cast<Vertex>(id));
    for (std::size_t dim = 0; dim < spec.dimension(); ++dim)
      if (coords[dim] + 1 < spec.length(dim))
        edges.push_back({static_cast<Vertex>(id), static_cast<Vertex>(id + spec.stride(dim))});
  }
  Graph g(total, std::move(edges));
  g.grid_ = spec;
  return g;
}

/// Universe 0..n-1 with a multiset of nonempty hyperedges (each stored sorted).
class Hypergraph {
 public:
  Hypergraph() = default;

  Hypergraph(std::size_t n, std::vector<std::vector<Vertex>> hyperedges)
      : n_(n), hyperedges_(std::move(hyperedges)) {
    for (auto& e : hyperedges_) {
      if (e.empty()) throw std::invalid_argument("empty hyperedge");
      std::sort(e.begin(), e.end());
      e.erase(std::unique(e.begin(), e.end()), e.end());
      if (e.back() >= n_)
        throw std::invalid_argument("hyperedge member " + std::to_string(e.back()) + " out of range");
    }
  }

  std::size_t universe_size() const { return n_; }
  std::size_t edge_count() const { return hyperedges_.size(); }
  const std::vector<std::vector<Vertex>>& hyperedges() const { return hyperedges_; }
  std::span<const Vertex> hyperedge(std::size_t i) const { return hyperedges_.at(i); }

  friend bool operator==(const Hypergraph&, const Hypergraph&) = default;

 private:
  std::size_t n_ = 0;
  std::vector<std::vector<Vertex>> hyperedges_;
};

/// One hyperedge N[v] per vertex, in vertex order.
inline Hypergraph closed_neighborhood_hypergraph(const Graph& g) {
  std::vector<std::vector<Vertex>> sets(g.vertex_count());
  for (Vertex v = 0; v < g.vertex_count(); ++v) {
    sets[v].push_back(v);
    for (Vertex w : g.neighbors(v)) sets[v].push_back(w);
  }
  return Hypergraph(g.vertex_count(), std::move(sets));
}

inline Hypergraph graph_as_hypergraph(const Graph& g) {
  std::vector<std::vector<Vertex>> sets;
  sets.reserve(g.edge_count());
  for (const auto& e : g.edges()) sets.push_back({e.u, e.v});
  return Hypergraph(g.vertex_count(), std::move(sets));
}

/// Graph with an edge between every two members of a common hyperedge.
inline Graph primal_graph(const Hypergraph& hg) {
  std::set<Edge> pairs;
  for (const auto& e : hg.hyperedges())
    for (std::size_t i = 0; i < e.size(); ++i)
      for (std::size_t j = i + 1; j < e.size(); ++j) pairs.insert({e[i], e[j]});
  return Graph(hg.universe_size(), std::vector<Edge>(pairs.begin(), pairs.end()));
}

}  // namespace ztdp
