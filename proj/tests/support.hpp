#pragma once

// Instance generators shared by the unit and acceptance tests.

#include <cstddef>
#include <cstdint>
#include <algorithm>
#include <functional>
#include <random>
#include <vector>

#include <ztdp/ztdp.hpp>

namespace ztdp::testkit {

inline bool is_connected(const Graph& g) {
  if (g.vertex_count() == 0) return true;
  std::vector<char> seen(g.vertex_count(), 0);
  std::vector<Vertex> stack{0};
  seen[0] = 1;
  std::size_t count = 1;
  while (!stack.empty()) {
    Vertex v = stack.back();
    stack.pop_back();
    for (Vertex w : g.neighbors(v))
      if (!seen[w]) {
        seen[w] = 1;
        ++count;
        stack.push_back(w);
      }
  }
  return count == g.vertex_count();
}

/// Calls fn on every connected labelled simple graph on n vertices.
inline void for_each_connected_graph(std::size_t n, const std::function<void(const Graph&)>& fn) {
  std::vector<Edge> pairs;
  for (Vertex u = 0; u < n; ++u)
    for (Vertex v = u + 1; v < n; ++v) pairs.push_back({u, v});
  const std::uint64_t total = std::uint64_t{1} << pairs.size();
  for (std::uint64_t pick = 0; pick < total; ++pick) {
    std::vector<Edge> edges;
    for (std::size_t i = 0; i < pairs.size(); ++i)
      if (pick >> i & 1u) edges.push_back(pairs[i]);
    Graph g(n, std::move(edges));
    if (is_connected(g)) fn(g);
  }
}

/// Random spanning tree plus independent extra edges with probability p.
inline Graph random_connected_graph(std::size_t n, double p, std::mt19937_64& rng) {
  std::vector<Edge> edges;
  std::vector<std::vector<char>> have(n, std::vector<char>(n, 0));
  for (std::size_t v = 1; v < n; ++v) {
    auto u = static_cast<Vertex>(std::uniform_int_distribution<std::size_t>(0, v - 1)(rng));
    edges.push_back({u, static_cast<Vertex>(v)});
    have[u][v] = 1;
  }
  std::bernoulli_distribution coin(p);
  for (Vertex u = 0; u < n; ++u)
    for (Vertex v = u + 1; v < n; ++v)
      if (!have[u][v] && coin(rng)) edges.push_back({u, v});
  std::shuffle(edges.begin(), edges.end(), rng);
  return Graph(n, std::move(edges));
}

inline Hypergraph random_hypergraph(std::size_t universe, std::size_t sets, std::mt19937_64& rng) {
  std::vector<std::vector<Vertex>> hs;
  std::uniform_int_distribution<std::uint32_t> any(1, (1u << universe) - 1);
  for (std::size_t i = 0; i < sets; ++i) {
    std::uint32_t mask = any(rng);
    std::vector<Vertex> e;
    for (Vertex v = 0; v < universe; ++v)
      if (mask >> v & 1u) e.push_back(v);
    hs.push_back(std::move(e));
  }
  return Hypergraph(universe, std::move(hs));
}

/// Dominating sets by direct enumeration of vertex subsets.
inline BigInt brute_dominating_sets(const Graph& g) {
  const std::size_t n = g.vertex_count();
  std::uint64_t count = 0;
  for (std::uint32_t pick = 0; pick < (1u << n); ++pick) {
    bool dominated = true;
    for (Vertex v = 0; v < n && dominated; ++v) {
      if (pick >> v & 1u) continue;
      bool hit = false;
      for (Vertex w : g.neighbors(v)) hit = hit || (pick >> w & 1u);
      dominated = hit;
    }
    if (dominated) ++count;
  }
  return count;
}

inline SetFunction<IntegerRing> random_set_function(const IntegerRing& ring, std::size_t ground, std::mt19937_64& rng,
                                      std::int64_t lo = -20, std::int64_t hi = 20) {
  SetFunction<IntegerRing> f(ring, ground);
  std::uniform_int_distribution<std::int64_t> value(lo, hi);
  for (std::uint32_t x = 0; x < f.table_size(); ++x) f[x] = ring.reduce(BigInt(value(rng)));
  return f;
}

}  // namespace ztdp::testkit
